//! Newtonian/logarithmic potentials: closed forms where they exist and
//! adaptive quadrature everywhere else.
//!
//! The core evaluators compute the pure Newtonian convolution U = E * mu
//! with the dimension-matched kernel (no permittivity). The electrostatic
//! closed forms take an explicit eps0 or kappa so unit systems never mix
//! silently; in these conventions V = U / eps0 in 3D.

use crate::geometry::{cone_surface_distance, Body, Point, Point2, SymmetricBody3D};
use crate::measure::{Atom, AtomicMeasure, BodyMeasure, Measure};
use crate::quad::{self, CompensatedSum};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Default relative tolerance for body quadrature.
pub const BODY_QUAD_TOL: f64 = 1e-8;
/// Relative tolerance for segment-atom quadrature.
pub const SEGMENT_QUAD_TOL: f64 = 1e-10;
/// Points closer than this to a singular support are rejected.
pub const SUPPORT_CLEARANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    #[error("kernel evaluated at the origin")]
    SingularPoint,
    #[error("evaluation point lies on the measure's support")]
    OnSupport,
    #[error("evaluation point lies on a singular boundary layer")]
    OnBoundary,
    #[error("quadrature failed to converge (estimated error {0:.3e})")]
    NonConvergent(f64),
    #[error("shell closed form only holds outside the shell (r <= R)")]
    InsideShell,
    #[error("radius arguments violate the formula's domain")]
    InvalidRadius,
    #[error("kernel dimension {kernel} does not match object dimension {object}")]
    DimensionMismatch { kernel: usize, object: usize },
}

/// Fundamental solution of -Laplace, indexed by dimension.
///
/// E(x) = -|x|/2 (n=1), -(1/2pi) ln|x| (n=2), (1/4pi)/|x| (n=3), so that
/// -ΔE equals the Dirac measure in every dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    dim: usize,
    c2: f64,
    c3: f64,
}

impl Kernel {
    pub fn new(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "kernel dimension must be 1, 2 or 3");
        Self {
            dim,
            c2: 1.0 / (2.0 * PI),
            c3: 1.0 / (4.0 * PI),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// E at displacement x from the source.
    pub fn eval(&self, x: &Point) -> Result<f64, PotentialError> {
        if x.dim() != self.dim {
            return Err(PotentialError::DimensionMismatch {
                kernel: self.dim,
                object: x.dim(),
            });
        }
        self.eval_radial(x.norm())
    }

    /// E as a function of source distance r > 0.
    pub fn eval_radial(&self, r: f64) -> Result<f64, PotentialError> {
        if r <= SUPPORT_CLEARANCE {
            return Err(PotentialError::SingularPoint);
        }
        Ok(match self.dim {
            1 => -r / 2.0,
            2 => -self.c2 * r.ln(),
            _ => self.c3 / r,
        })
    }

    fn radial_unchecked(&self, r: f64) -> f64 {
        let r = r.max(1e-300);
        match self.dim {
            1 => -r / 2.0,
            2 => -self.c2 * r.ln(),
            _ => self.c3 / r,
        }
    }
}

/// Electrostatic unit choice: kappa = 1/(4 pi eps0).
///
/// Natural units set kappa = 1; SI uses eps0 = 8.85e-12 C^2/(N m^2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElectroConstants {
    pub kappa: f64,
}

impl ElectroConstants {
    pub fn natural() -> Self {
        Self { kappa: 1.0 }
    }

    pub fn si() -> Self {
        Self::from_eps0(8.85e-12)
    }

    pub fn from_eps0(eps0: f64) -> Self {
        Self {
            kappa: 1.0 / (4.0 * PI * eps0),
        }
    }

    pub fn eps0(&self) -> f64 {
        1.0 / (4.0 * PI * self.kappa)
    }
}

impl Default for ElectroConstants {
    fn default() -> Self {
        Self::natural()
    }
}

/// One evaluated potential with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSample {
    pub x: Point,
    pub value: f64,
    pub estimated_error: f64,
}

/// Potential of an atomic measure at x.
///
/// Point atoms contribute m·E(x - x_j) exactly; segment atoms are integrated
/// piece by piece (the density is linear between samples) with adaptive
/// panels. Atoms are summed compensated, in order.
pub fn potential_atomic(
    kernel: &Kernel,
    measure: &AtomicMeasure,
    x: &Point,
) -> Result<PotentialSample, PotentialError> {
    if let Some(d) = measure.dim() {
        if d != kernel.dim() || x.dim() != d {
            return Err(PotentialError::DimensionMismatch {
                kernel: kernel.dim(),
                object: d,
            });
        }
    }
    if measure.support_distance(x) <= SUPPORT_CLEARANCE {
        return Err(PotentialError::OnSupport);
    }
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for atom in &measure.atoms {
        match atom {
            Atom::Point { x: p, m } => {
                acc.add(m * kernel.eval(&x.sub(p))?);
            }
            Atom::Segment { p0, p1, lambda } => {
                let (v, e) = segment_potential(kernel, p0, p1, lambda, x, SEGMENT_QUAD_TOL);
                acc.add(v);
                err += e;
            }
        }
    }
    Ok(PotentialSample {
        x: *x,
        value: acc.total(),
        estimated_error: err,
    })
}

/// Integral of lambda(s)·E(x - p(s)) ds over a sampled segment.
fn segment_potential(
    kernel: &Kernel,
    p0: &Point,
    p1: &Point,
    lambda: &[f64],
    x: &Point,
    tol: f64,
) -> (f64, f64) {
    let len = p0.distance(p1);
    if len <= 0.0 || lambda.is_empty() {
        return (0.0, 0.0);
    }
    let pieces = lambda.len().saturating_sub(1).max(1);
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for k in 0..pieces {
        let t0 = k as f64 / pieces as f64;
        let t1 = (k + 1) as f64 / pieces as f64;
        let la = lambda[k.min(lambda.len() - 1)];
        let lb = lambda[(k + 1).min(lambda.len() - 1)];
        if la == 0.0 && lb == 0.0 {
            continue;
        }
        let (v, e) = quad::integrate(
            &mut |t: f64| {
                let u = (t - t0) / (t1 - t0);
                let lam = la + (lb - la) * u;
                let p = p0.lerp(p1, t);
                lam * kernel.radial_unchecked(x.distance(&p))
            },
            t0,
            t1,
            tol,
        );
        acc.add(v * len);
        err += e * len;
    }
    (acc.total(), err)
}

/// Potential of either measure kind, with a quadrature tolerance for the
/// body route.
pub fn potential_of_measure(
    kernel: &Kernel,
    measure: &Measure,
    x: &Point,
    body_tol: f64,
) -> Result<PotentialSample, PotentialError> {
    match measure {
        Measure::Atomic(a) => potential_atomic(kernel, a, x),
        Measure::Body(b) => potential_body_with_tol(kernel, b, x, body_tol),
    }
}

/// Potential of a body measure by quadrature at the default tolerance.
///
/// Exterior points are the oracle regime; interior points are allowed (the
/// kernel singularity is integrable and handled by panel subdivision), but
/// points on a singular boundary wire raise [`PotentialError::OnBoundary`].
pub fn potential_body_quadrature(
    kernel: &Kernel,
    measure: &BodyMeasure,
    x: &Point,
) -> Result<PotentialSample, PotentialError> {
    potential_body_with_tol(kernel, measure, x, BODY_QUAD_TOL)
}

/// Same as [`potential_body_quadrature`] with an explicit relative tolerance.
pub fn potential_body_with_tol(
    kernel: &Kernel,
    measure: &BodyMeasure,
    x: &Point,
    tol: f64,
) -> Result<PotentialSample, PotentialError> {
    let dim = measure.dim();
    if kernel.dim() != dim || x.dim() != dim {
        return Err(PotentialError::DimensionMismatch {
            kernel: kernel.dim(),
            object: dim,
        });
    }
    let a = measure.surface_weight;
    let b = measure.volume_weight;
    let mut value = 0.0;
    let mut err = 0.0;

    match &measure.body {
        Body::Polygon(poly) => {
            let q = Point2::new(x.coords()[0], x.coords()[1]);
            if a > 0.0 {
                let bd = poly
                    .edge_iter()
                    .map(|(p, r)| q.distance_to_segment(p, r))
                    .fold(f64::INFINITY, f64::min);
                if bd <= SUPPORT_CLEARANCE * (1.0 + poly.circumradius()) {
                    return Err(PotentialError::OnBoundary);
                }
                for (p, r) in poly.edge_iter() {
                    let (v, e) = segment_potential(
                        kernel,
                        &Point::d2(p.x, p.y),
                        &Point::d2(r.x, r.y),
                        &[1.0, 1.0],
                        x,
                        tol,
                    );
                    value += a * v;
                    err += a * e;
                }
            }
            if b > 0.0 {
                let (v, e) = polygon_area_potential(kernel, poly, q, tol)?;
                value += b * v;
                err += b * e;
            }
        }
        Body::Disk { radius } => {
            let rho = x.norm();
            if a > 0.0 {
                if (rho - radius).abs() <= SUPPORT_CLEARANCE * (1.0 + radius) {
                    return Err(PotentialError::OnBoundary);
                }
                // boundary wire: a ring of line density a
                value += a * 2.0 * PI * radius * kernel.radial_unchecked(rho.max(*radius));
            }
            if b > 0.0 {
                let (v, e) = radial_rings_2d(kernel, *radius, rho, tol);
                value += b * v;
                err += b * e;
            }
        }
        Body::Symmetric(s) => {
            let c = x.coords();
            let (rho, z) = (c[0].hypot(c[1]), c[2]);
            match *s {
                SymmetricBody3D::SphereShell { radius } => {
                    let r = x.norm();
                    if (r - radius).abs() <= SUPPORT_CLEARANCE * (1.0 + radius) {
                        return Err(PotentialError::OnBoundary);
                    }
                    let (v, e) = shell_ring_quadrature(radius, r, tol);
                    value += a * v;
                    err += a * e;
                }
                SymmetricBody3D::SolidBall { radius } => {
                    let r = x.norm();
                    if a > 0.0 {
                        if (r - radius).abs() <= SUPPORT_CLEARANCE * (1.0 + radius) {
                            return Err(PotentialError::OnBoundary);
                        }
                        let (v, e) = shell_ring_quadrature(radius, r, tol);
                        value += a * v;
                        err += a * e;
                    }
                    if b > 0.0 {
                        let (v, e) = ball_radial_quadrature(radius, r, tol);
                        value += b * v;
                        err += b * e;
                    }
                }
                SymmetricBody3D::SolidCylinder { radius, .. } => {
                    // infinite-cylinder idealization: per-unit-length 2D
                    // reduction in the cross-section plane (log kernel)
                    let k2 = Kernel::new(2);
                    if a > 0.0 {
                        if (rho - radius).abs() <= SUPPORT_CLEARANCE * (1.0 + radius) {
                            return Err(PotentialError::OnBoundary);
                        }
                        value += a * 2.0 * PI * radius * k2.radial_unchecked(rho.max(radius));
                    }
                    if b > 0.0 {
                        let (v, e) = radial_rings_2d(&k2, radius, rho, tol);
                        value += b * v;
                        err += b * e;
                    }
                }
                SymmetricBody3D::ConeSurface { radius, height } => {
                    let surf = cone_surface_distance(radius, height, rho, z);
                    let on_apex = x.norm() <= SUPPORT_CLEARANCE;
                    if !on_apex && surf <= SUPPORT_CLEARANCE * (1.0 + radius.hypot(height)) {
                        return Err(PotentialError::OnBoundary);
                    }
                    let (v, e) = cone_surface_quadrature(radius, height, rho, z, tol);
                    value += a * v;
                    err += a * e;
                }
            }
        }
    }

    if err > 1e3 * tol * (value.abs().max(1e-12)) + 1e-14 {
        return Err(PotentialError::NonConvergent(err));
    }
    Ok(PotentialSample {
        x: *x,
        value,
        estimated_error: err,
    })
}

/// Area potential of a unit-density polygon by centroid-fan triangulation
/// with adaptive tensor panels per triangle.
fn polygon_area_potential(
    kernel: &Kernel,
    poly: &crate::geometry::ConvexPolygon,
    x: Point2,
    tol: f64,
) -> Result<(f64, f64), PotentialError> {
    let c = poly.centroid();
    let f = |y: Point2| kernel.radial_unchecked(x.distance(y));

    // one pass for scale (L1), one adaptive pass for the value
    let mut scale = 0.0;
    for (pa, pb) in poly.edge_iter() {
        scale += triangle_panel(&|y| f(y).abs(), c, pa, pb);
    }
    let tol_abs = tol * scale.max(1e-12);

    let mut value = 0.0;
    let mut err = 0.0;
    for (pa, pb) in poly.edge_iter() {
        let whole = triangle_panel(&f, c, pa, pb);
        let (v, e) = triangle_adaptive(&f, c, pa, pb, whole, tol_abs / poly.len() as f64, 0);
        value += v;
        err += e;
    }
    Ok((value, err))
}

const TRI_MAX_DEPTH: usize = 26;

/// Tensor Gauss panel over a triangle via the collapsed square map
/// y(u,v) = A + u(B-A) + uv(C-B), |J| = 2·area·u.
fn triangle_panel(f: &impl Fn(Point2) -> f64, a: Point2, b: Point2, c: Point2) -> f64 {
    let (nodes, weights) = triangle_rule();
    let ab = b - a;
    let bc = c - b;
    let two_area = ab.cross(c - a);
    let mut acc = 0.0;
    for (&u, wu) in nodes.iter().zip(weights) {
        for (&v, wv) in nodes.iter().zip(weights) {
            let y = a + ab * u + bc * (u * v);
            acc += wu * wv * u * f(y);
        }
    }
    acc * two_area
}

fn triangle_rule() -> &'static (Vec<f64>, Vec<f64>) {
    use std::sync::OnceLock;
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let (n, w) = quad::gauss_legendre(quad::DEFAULT_ORDER);
        // remap [-1,1] -> [0,1]
        let nodes = n.iter().map(|t| 0.5 * (t + 1.0)).collect();
        let weights = w.iter().map(|wi| 0.5 * wi).collect();
        (nodes, weights)
    })
}

fn triangle_adaptive(
    f: &impl Fn(Point2) -> f64,
    a: Point2,
    b: Point2,
    c: Point2,
    whole: f64,
    tol_abs: f64,
    depth: usize,
) -> (f64, f64) {
    let mab = (a + b) * 0.5;
    let mbc = (b + c) * 0.5;
    let mca = (c + a) * 0.5;
    let children = [(a, mab, mca), (mab, b, mbc), (mca, mbc, c), (mab, mbc, mca)];
    let parts: Vec<f64> = children
        .iter()
        .map(|&(p, q, r)| triangle_panel(f, p, q, r))
        .collect();
    let refined: f64 = parts.iter().sum();
    let diff = (refined - whole).abs();
    if diff <= tol_abs || depth >= TRI_MAX_DEPTH {
        return (refined, diff);
    }
    let mut value = 0.0;
    let mut err = 0.0;
    for (&(p, q, r), &part) in children.iter().zip(&parts) {
        let (v, e) = triangle_adaptive(f, p, q, r, part, tol_abs / 4.0, depth + 1);
        value += v;
        err += e;
    }
    (value, err)
}

/// 2D disk of unit area density as concentric rings; exact split at the
/// evaluation radius. Exterior and interior points both work.
fn radial_rings_2d(kernel: &Kernel, radius: f64, rho: f64, tol: f64) -> (f64, f64) {
    // ring of radius u has mass 2 pi u du and potential at distance rho:
    // (mass)·E(max(rho,u)) by the mean-value property of the log kernel
    let mut f = |u: f64| 2.0 * PI * u * kernel.radial_unchecked(rho.max(u));
    if rho > 0.0 && rho < radius {
        let (v1, e1) = quad::integrate(&mut f, 0.0, rho, tol);
        let (v2, e2) = quad::integrate(&mut f, rho, radius, tol);
        (v1 + v2, e1 + e2)
    } else {
        quad::integrate(&mut f, 0.0, radius, tol)
    }
}

/// Spherical shell of unit surface density, by the ring decomposition
/// dA = 2 pi R^2 sin(phi) dphi; works inside and outside.
fn shell_ring_quadrature(radius: f64, r: f64, tol: f64) -> (f64, f64) {
    let mut f = |phi: f64| {
        let s = (r * r - 2.0 * r * radius * phi.cos() + radius * radius)
            .max(1e-300)
            .sqrt();
        2.0 * PI * radius * radius * phi.sin() / (4.0 * PI * s)
    };
    quad::integrate(&mut f, 0.0, PI, tol)
}

/// Solid ball of unit volume density as nested shells; split at r.
fn ball_radial_quadrature(radius: f64, r: f64, tol: f64) -> (f64, f64) {
    let mut f = |u: f64| u * u / r.max(u).max(1e-300);
    if r > 0.0 && r < radius {
        let (v1, e1) = quad::integrate(&mut f, 0.0, r, tol);
        let (v2, e2) = quad::integrate(&mut f, r, radius, tol);
        (v1 + v2, e1 + e2)
    } else {
        quad::integrate(&mut f, 0.0, radius, tol)
    }
}

/// Lateral cone surface of unit charge density, reduced to slant rings.
///
/// On the axis the ring integral collapses to one dimension; the apex is an
/// allowed evaluation point (the ring radius cancels the kernel growth).
fn cone_surface_quadrature(radius: f64, height: f64, rho: f64, z: f64, tol: f64) -> (f64, f64) {
    let slant = radius.hypot(height);
    let on_axis = rho <= 1e-14 * (1.0 + radius);
    if on_axis {
        let mut f = |s: f64| {
            let ri = radius * s / slant;
            let zi = height * s / slant;
            let d = (ri * ri + (z - zi) * (z - zi)).max(1e-300).sqrt();
            2.0 * PI * ri / (4.0 * PI * d)
        };
        return quad::integrate(&mut f, 0.0, slant, tol);
    }
    let mut f = |s: f64| {
        let ri = radius * s / slant;
        let zi = height * s / slant;
        let dz2 = (z - zi) * (z - zi);
        let (ring, _) = quad::integrate(
            &mut |theta: f64| {
                let d2 = rho * rho + ri * ri - 2.0 * rho * ri * theta.cos() + dz2;
                1.0 / d2.max(1e-300).sqrt()
            },
            0.0,
            PI,
            tol * 0.1,
        );
        // factor 2 for the symmetric half-ring
        ri * 2.0 * ring / (4.0 * PI)
    };
    quad::integrate(&mut f, 0.0, slant, tol)
}

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

/// Exterior potential of a uniformly charged spherical shell: kappa·q/r with
/// q = 4 pi R^2 sigma. Refuses interior points; the derivation is exterior.
pub fn shell_potential_closed(
    radius: f64,
    sigma: f64,
    r: f64,
    c: &ElectroConstants,
) -> Result<f64, PotentialError> {
    if !(radius > 0.0) {
        return Err(PotentialError::InvalidRadius);
    }
    if r <= radius {
        return Err(PotentialError::InsideShell);
    }
    let q = 4.0 * PI * radius * radius * sigma;
    Ok(c.kappa * q / r)
}

/// Potential of an infinite uniformly charged solid cylinder (Gauss's law),
/// referenced to zero at distance ref_a: -(R^2 rho / 2 eps0)·ln(r/a).
pub fn cylinder_potential_closed(
    radius: f64,
    rho: f64,
    r: f64,
    ref_a: f64,
    eps0: f64,
) -> Result<f64, PotentialError> {
    if !(radius > 0.0 && r > radius && ref_a > radius) {
        return Err(PotentialError::InvalidRadius);
    }
    Ok(-(radius * radius * rho / (2.0 * eps0)) * (r / ref_a).ln())
}

/// Potential of an infinite line charge with linear density lambda,
/// referenced to zero at distance ref_a: -(lambda / 2 pi eps0)·ln(r/a).
pub fn line_potential_closed(
    lambda: f64,
    r: f64,
    ref_a: f64,
    eps0: f64,
) -> Result<f64, PotentialError> {
    if !(r > 0.0 && ref_a > 0.0) {
        return Err(PotentialError::InvalidRadius);
    }
    Ok(-(lambda / (2.0 * PI * eps0)) * (r / ref_a).ln())
}

/// Apex potential of a uniformly charged open cone surface: sigma·R/(2 eps0).
pub fn cone_apex_potential_closed(radius: f64, _height: f64, sigma: f64, eps0: f64) -> f64 {
    sigma * radius / (2.0 * eps0)
}

/// Apex potential of the cone's axis line with density q_i = 2 pi R_i sigma,
/// R_i/h_i = R/h: the integrand is constant, so the closed form is
/// (1/4 pi eps0)·(2 pi R sigma / h)·h.
pub fn cone_axis_mother_potential(radius: f64, height: f64, sigma: f64, eps0: f64) -> f64 {
    (1.0 / (4.0 * PI * eps0)) * (2.0 * PI * radius * sigma / height) * height
}
