//! Potential-theoretic mother bodies: measure-zero mass skeletons that
//! reproduce a body's exterior Newtonian potential.
//!
//! The crate covers the whole desk workflow:
//!
//! * [`geometry`] — convex polygons, symmetric 3D bodies, and the medial
//!   axis of a convex polygon (its skeleton carrier);
//! * [`measure`] — body distributions a·H^{n-1}|dΩ + b·L^n|Ω and atomic
//!   candidate measures, with mass and moment accounting;
//! * [`packing`] — quadtree disk packing approximating a polygon's volume
//!   measure by point masses;
//! * [`potential`] — the Newtonian/logarithmic kernels, closed-form
//!   electrostatic potentials (shell, cylinder, line, cone) and adaptive
//!   quadrature evaluators for everything else;
//! * [`skeleton`] — analytic mother bodies for the symmetric cases and a
//!   nonnegative least-squares density fit on a polygon's medial axis;
//! * [`nnls`] — the active-set nonnegative least-squares solver behind the
//!   fit;
//! * [`verify`] — numerical checks of the five mother-body axioms and
//!   reproduction tables for the worked cases;
//! * [`scene`] — scene/measure/skeleton JSON formats and bit-stable CSV.
//!
//! The `examples/` directory has one runnable example per capability; the
//! `motherbody` binary exposes the same operations as subcommands.

pub mod geometry;
pub mod measure;
pub mod nnls;
pub mod packing;
pub mod potential;
pub mod quad;
pub mod scene;
pub mod skeleton;
pub mod verify;

pub use geometry::{Body, ConvexPolygon, Point, Point2, SkeletonGraph, SymmetricBody3D};
pub use measure::{Atom, AtomicMeasure, BodyMeasure, Measure};
pub use potential::{ElectroConstants, Kernel, PotentialSample};
pub use skeleton::{DensityBasis, FitConfig, FitReport};
pub use verify::{AxiomConfig, VerificationReport};
