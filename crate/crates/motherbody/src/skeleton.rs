//! Candidate mother bodies: analytic skeletons for the symmetric bodies and
//! a fitted nonnegative density on a convex polygon's medial axis.
//!
//! The polygon route discretizes the exterior-match axiom at collocation
//! rings and solves for hat-function coefficients on the skeleton mesh by
//! nonnegative least squares, optionally pinning the total mass to the
//! body's.

use crate::geometry::{
    medial_axis, Body, ConvexPolygon, GeometryError, Point, Point2, SkeletonGraph, SymmetricBody3D,
};
use crate::measure::{Atom, AtomicMeasure, BodyMeasure};
use crate::nnls::{self, Matrix, NnlsError, NnlsOptions};
use crate::potential::{potential_atomic, potential_body_with_tol, Kernel, PotentialError};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("collocation point ({0}, {1}) lies inside or on the body")]
    CollocationInsideBody(f64, f64),
    #[error("no analytic mother body for this body kind")]
    UnsupportedBody,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Solver(#[from] NnlsError),
}

/// Hat-function basis on a skeleton subdivided K times per edge.
///
/// Mesh vertices are the skeleton nodes plus K-1 interior points per edge;
/// nodes shared between edges carry a single hat that spans every incident
/// sub-segment.
#[derive(Debug, Clone)]
pub struct DensityBasis {
    pub skeleton: SkeletonGraph,
    pub subdivisions: usize,
    /// hat centers: skeleton nodes first, then interior subdivision points
    mesh: Vec<Point2>,
    /// sub-segments as (mesh index, mesh index)
    pieces: Vec<(usize, usize)>,
    /// per skeleton edge, the mesh indices of its K+1 samples in order
    edge_samples: Vec<Vec<usize>>,
}

impl DensityBasis {
    pub fn new(skeleton: SkeletonGraph, subdivisions: usize) -> Self {
        assert!(subdivisions >= 1, "need at least one subdivision per edge");
        let k = subdivisions;
        let mut mesh = skeleton.nodes.clone();
        let mut pieces = Vec::new();
        let mut edge_samples = Vec::with_capacity(skeleton.edges.len());
        for &(i, j) in &skeleton.edges {
            let a = skeleton.nodes[i];
            let b = skeleton.nodes[j];
            let mut samples = Vec::with_capacity(k + 1);
            samples.push(i);
            for s in 1..k {
                let t = s as f64 / k as f64;
                mesh.push(a + (b - a) * t);
                samples.push(mesh.len() - 1);
            }
            samples.push(j);
            for w in samples.windows(2) {
                pieces.push((w[0], w[1]));
            }
            edge_samples.push(samples);
        }
        Self {
            skeleton,
            subdivisions,
            mesh,
            pieces,
            edge_samples,
        }
    }

    /// Number of basis functions (= mesh vertices).
    pub fn size(&self) -> usize {
        self.mesh.len()
    }

    pub fn mesh_positions(&self) -> &[Point2] {
        &self.mesh
    }

    /// The unit hat centered at mesh vertex j as an atomic measure.
    pub fn hat_measure(&self, j: usize) -> AtomicMeasure {
        let mut atoms = Vec::new();
        for &(a, b) in &self.pieces {
            if a == j || b == j {
                let lam = if a == j {
                    vec![1.0, 0.0]
                } else {
                    vec![0.0, 1.0]
                };
                atoms.push(Atom::Segment {
                    p0: Point::d2(self.mesh[a].x, self.mesh[a].y),
                    p1: Point::d2(self.mesh[b].x, self.mesh[b].y),
                    lambda: lam,
                });
            }
        }
        AtomicMeasure::new(atoms)
    }

    /// Mass (arclength integral) of each unit hat.
    pub fn masses(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.mesh.len()];
        for &(a, b) in &self.pieces {
            let half = 0.5 * self.mesh[a].distance(self.mesh[b]);
            m[a] += half;
            m[b] += half;
        }
        m
    }

    /// Assemble the measure with one segment atom per skeleton edge, its
    /// K+1 density samples taken from the coefficient vector.
    pub fn measure_with(&self, coeffs: &[f64]) -> AtomicMeasure {
        assert_eq!(coeffs.len(), self.mesh.len());
        let atoms = self
            .skeleton
            .edges
            .iter()
            .zip(&self.edge_samples)
            .map(|(&(i, j), samples)| Atom::Segment {
                p0: Point::d2(self.skeleton.nodes[i].x, self.skeleton.nodes[i].y),
                p1: Point::d2(self.skeleton.nodes[j].x, self.skeleton.nodes[j].y),
                lambda: samples.iter().map(|&s| coeffs[s]).collect(),
            })
            .collect();
        AtomicMeasure::new(atoms)
    }
}

/// One ring of sample points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingSpec {
    pub center: Point2,
    pub radius: f64,
    pub count: usize,
}

impl RingSpec {
    pub fn points(&self) -> Vec<Point2> {
        (0..self.count)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / self.count as f64;
                self.center + Point2::new(self.radius * a.cos(), self.radius * a.sin())
            })
            .collect()
    }
}

/// Collocation layout and solver knobs for the density fit.
///
/// Empty ring lists mean "use the defaults": collocation rings at 1.5x and
/// 2.5x circumradius totalling eight points per basis function, holdout at
/// 3.5x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    #[serde(default)]
    pub collocation: Vec<RingSpec>,
    #[serde(default)]
    pub holdout: Vec<RingSpec>,
    /// Tikhonov weight; None selects 1e-6 * trace(A'A)/cols
    #[serde(default)]
    pub regularization: Option<f64>,
    #[serde(default = "default_true")]
    pub mass_constraint: bool,
    /// subdivisions per skeleton edge (K)
    #[serde(default = "default_subdivisions")]
    pub subdivisions: usize,
}

fn default_true() -> bool {
    true
}

fn default_subdivisions() -> usize {
    16
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            collocation: Vec::new(),
            holdout: Vec::new(),
            regularization: None,
            mass_constraint: true,
            subdivisions: default_subdivisions(),
        }
    }
}

impl FitConfig {
    /// Fill in default collocation/holdout rings for this polygon and basis size.
    pub fn resolved_rings(
        &self,
        poly: &ConvexPolygon,
        basis_size: usize,
    ) -> (Vec<RingSpec>, Vec<RingSpec>) {
        let c = poly.centroid();
        let r = poly.circumradius();
        // two rings of 4x basis points each = 8x basis total
        let per_ring = round_up_multiple((4 * basis_size).max(8), 4);
        let colloc = if self.collocation.is_empty() {
            vec![
                RingSpec {
                    center: c,
                    radius: 1.5 * r,
                    count: per_ring,
                },
                RingSpec {
                    center: c,
                    radius: 2.5 * r,
                    count: per_ring,
                },
            ]
        } else {
            self.collocation.clone()
        };
        let holdout = if self.holdout.is_empty() {
            vec![RingSpec {
                center: c,
                radius: 3.5 * r,
                count: round_up_multiple((2 * basis_size).max(8), 4),
            }]
        } else {
            self.holdout.clone()
        };
        (colloc, holdout)
    }
}

fn round_up_multiple(n: usize, m: usize) -> usize {
    n.div_ceil(m) * m
}

/// Residual statistics of a density fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub residual_rms: f64,
    pub holdout_rms: f64,
    /// holdout_rms divided by the rms of the holdout truth
    pub holdout_relative: f64,
    /// fitted total mass minus the target mass
    pub mass_error: f64,
    pub min_coefficient: f64,
    pub iterations: usize,
}

/// Closed-form mother bodies for the symmetric cases.
///
/// Shell, ball and disk concentrate to a center point of equal total mass;
/// the cylinder collapses to its axis with constant line density pi R^2 rho
/// (plus 2 pi R a for a charged lateral surface); the cone surface maps to
/// its axis with the linear density 2 pi R_i sigma, which matches the cone's
/// potential at the apex but not its total charge.
pub fn analytic_mother(measure: &BodyMeasure) -> Result<AtomicMeasure, FitError> {
    let a = measure.surface_weight;
    let b = measure.volume_weight;
    match &measure.body {
        Body::Disk { radius } => {
            let m = a * 2.0 * PI * radius + b * PI * radius * radius;
            Ok(AtomicMeasure::point_mass(Point::d2(0.0, 0.0), m))
        }
        Body::Symmetric(SymmetricBody3D::SphereShell { radius }) => {
            let m = a * 4.0 * PI * radius * radius;
            Ok(AtomicMeasure::point_mass(Point::d3(0.0, 0.0, 0.0), m))
        }
        Body::Symmetric(SymmetricBody3D::SolidBall { radius }) => {
            let m = a * 4.0 * PI * radius * radius + b * 4.0 / 3.0 * PI * radius.powi(3);
            Ok(AtomicMeasure::point_mass(Point::d3(0.0, 0.0, 0.0), m))
        }
        Body::Symmetric(SymmetricBody3D::SolidCylinder { radius, length }) => {
            if a != 0.0 {
                // the caps break the infinite-cylinder reduction
                return Err(FitError::UnsupportedBody);
            }
            let lambda = b * PI * radius * radius;
            Ok(AtomicMeasure::new(vec![Atom::Segment {
                p0: Point::d3(0.0, 0.0, -length / 2.0),
                p1: Point::d3(0.0, 0.0, length / 2.0),
                lambda: vec![lambda, lambda],
            }]))
        }
        Body::Symmetric(SymmetricBody3D::ConeSurface { radius, height }) => {
            if b != 0.0 {
                return Err(FitError::UnsupportedBody);
            }
            Ok(AtomicMeasure::new(vec![Atom::Segment {
                p0: Point::d3(0.0, 0.0, 0.0),
                p1: Point::d3(0.0, 0.0, *height),
                lambda: vec![0.0, 2.0 * PI * radius * a],
            }]))
        }
        Body::Polygon(_) => Err(FitError::UnsupportedBody),
    }
}

/// Collocation matrix and data vector for the exterior-match fit.
///
/// `A[i][j]` is the potential of unit hat j at collocation point i; `y[i]`
/// is the polygon's (unit volume density) potential there.
pub fn assemble_system(
    poly: &ConvexPolygon,
    basis: &DensityBasis,
    points: &[Point2],
    kernel: &Kernel,
) -> Result<(Matrix, Vec<f64>), FitError> {
    for p in points {
        if poly.contains(*p) {
            return Err(FitError::CollocationInsideBody(p.x, p.y));
        }
    }
    let hats: Vec<AtomicMeasure> = (0..basis.size()).map(|j| basis.hat_measure(j)).collect();
    let body = BodyMeasure::solid(Body::Polygon(poly.clone()));

    let mut a = Matrix::zeros(points.len(), basis.size());
    let mut y = vec![0.0; points.len()];
    for (i, p) in points.iter().enumerate() {
        let x = Point::d2(p.x, p.y);
        for (j, hat) in hats.iter().enumerate() {
            a.set(i, j, potential_atomic(kernel, hat, &x)?.value);
        }
        y[i] = potential_body_with_tol(kernel, &body, &x, 1e-10)?.value;
    }
    Ok((a, y))
}

/// Nonnegative density fit. `masses` are the per-hat arclength masses and
/// `target_mass` the body mass for the optional equality constraint.
pub fn fit_density(
    a: &Matrix,
    y: &[f64],
    cfg: &FitConfig,
    masses: &[f64],
    target_mass: f64,
) -> Result<(Vec<f64>, FitReport), FitError> {
    let lam = cfg.regularization.unwrap_or_else(|| {
        let g = a.gram();
        1e-6 * g.trace() / a.cols() as f64
    });
    let opts = NnlsOptions {
        regularization: lam,
        equality: cfg.mass_constraint.then(|| (masses.to_vec(), target_mass)),
        ..NnlsOptions::default()
    };
    let sol = nnls::solve(a, y, &opts)?;
    let fitted_mass: f64 = sol
        .coefficients
        .iter()
        .zip(masses)
        .map(|(c, m)| c * m)
        .sum();
    let min_coefficient = sol
        .coefficients
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let report = FitReport {
        residual_rms: sol.residual_norm / (y.len() as f64).sqrt(),
        holdout_rms: 0.0,
        holdout_relative: 0.0,
        mass_error: fitted_mass - target_mass,
        min_coefficient,
        iterations: sol.iterations,
    };
    Ok((sol.coefficients, report))
}

/// Full pipeline: medial axis, hat basis, collocation assembly, NNLS fit.
///
/// Returns the fitted skeleton measure and the report with holdout
/// residuals filled in.
pub fn mother_of_polygon(
    poly: &ConvexPolygon,
    cfg: &FitConfig,
    kernel: &Kernel,
) -> Result<(AtomicMeasure, FitReport), FitError> {
    let skeleton = medial_axis(poly)?;
    let basis = DensityBasis::new(skeleton, cfg.subdivisions);
    let (colloc, holdout) = cfg.resolved_rings(poly, basis.size());

    let colloc_pts: Vec<Point2> = colloc.iter().flat_map(|r| r.points()).collect();
    let (a, y) = assemble_system(poly, &basis, &colloc_pts, kernel)?;
    let (coeffs, mut report) = fit_density(&a, &y, cfg, &basis.masses(), poly.area())?;

    let holdout_pts: Vec<Point2> = holdout.iter().flat_map(|r| r.points()).collect();
    if !holdout_pts.is_empty() {
        let (ah, yh) = assemble_system(poly, &basis, &holdout_pts, kernel)?;
        let pred = ah.mul_vec(&coeffs);
        let n = yh.len() as f64;
        let rms = (pred
            .iter()
            .zip(&yh)
            .map(|(p, t)| (p - t) * (p - t))
            .sum::<f64>()
            / n)
            .sqrt();
        let truth_rms = (yh.iter().map(|t| t * t).sum::<f64>() / n).sqrt();
        report.holdout_rms = rms;
        report.holdout_relative = rms / truth_rms.max(1e-300);
    }
    Ok((basis.measure_with(&coeffs), report))
}
