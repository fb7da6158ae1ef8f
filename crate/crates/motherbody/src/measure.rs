//! Mass and charge distributions: body measures a·H^{n-1}|dΩ + b·L^n|Ω and
//! atomic measures (point masses plus segments with piecewise-linear
//! density), with total-mass and moment accounting.

use crate::geometry::{Body, Point, RawMoments};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("cannot rescale a measure with zero total mass")]
    ZeroMass,
    #[error("density weights must satisfy a >= 0, b >= 0, a + b > 0 (got a={0}, b={1})")]
    InvalidWeights(f64, f64),
}

/// A body with the distribution a·H^{n-1} on its boundary plus b·L^n on its
/// interior.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyMeasure {
    pub body: Body,
    /// boundary (surface) density weight a
    pub surface_weight: f64,
    /// interior (volume) density weight b
    pub volume_weight: f64,
}

impl BodyMeasure {
    pub fn new(body: Body, surface_weight: f64, volume_weight: f64) -> Result<Self, MeasureError> {
        if !(surface_weight >= 0.0 && volume_weight >= 0.0 && surface_weight + volume_weight > 0.0)
        {
            return Err(MeasureError::InvalidWeights(surface_weight, volume_weight));
        }
        Ok(Self {
            body,
            surface_weight,
            volume_weight,
        })
    }

    /// Volume-only measure with unit density.
    pub fn solid(body: Body) -> Self {
        Self {
            body,
            surface_weight: 0.0,
            volume_weight: 1.0,
        }
    }

    /// Boundary-only measure with the given surface density.
    pub fn shell(body: Body, sigma: f64) -> Self {
        Self {
            body,
            surface_weight: sigma,
            volume_weight: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    fn raw_moments(&self) -> RawMoments {
        let mut m = self.body.boundary_moments().scaled(self.surface_weight);
        m.accumulate(&self.body.volume_moments().scaled(self.volume_weight));
        m
    }

    pub fn total_mass(&self) -> f64 {
        self.raw_moments().size
    }
}

/// One atom of an atomic measure.
///
/// Segment densities are piecewise linear, sampled at K+1 equispaced
/// parameters from p0 to p1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Atom {
    Point {
        x: Point,
        m: f64,
    },
    Segment {
        p0: Point,
        p1: Point,
        lambda: Vec<f64>,
    },
}

impl Atom {
    pub fn mass(&self) -> f64 {
        match self {
            Atom::Point { m, .. } => *m,
            Atom::Segment { p0, p1, lambda } => {
                let len = p0.distance(p1);
                trapezoid_mean(lambda) * len
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Atom::Point { x, .. } => x.dim(),
            Atom::Segment { p0, .. } => p0.dim(),
        }
    }

    /// Distance from x to the support of this atom.
    pub fn support_distance(&self, x: &Point) -> f64 {
        match self {
            Atom::Point { x: p, .. } => x.distance(p),
            Atom::Segment { p0, p1, .. } => x.distance_to_segment(p0, p1),
        }
    }

    fn raw_moments(&self) -> RawMoments {
        match self {
            Atom::Point { x, m } => {
                let c = x.coords();
                let mut second = [[0.0; 3]; 3];
                let mut first = [0.0; 3];
                for i in 0..x.dim() {
                    first[i] = m * c[i];
                    for j in 0..x.dim() {
                        second[i][j] = m * c[i] * c[j];
                    }
                }
                RawMoments {
                    size: *m,
                    first,
                    second,
                }
            }
            Atom::Segment { p0, p1, lambda } => {
                let pieces = lambda.len().saturating_sub(1).max(1);
                let mut acc = RawMoments::default();
                for k in 0..pieces {
                    let t0 = k as f64 / pieces as f64;
                    let t1 = (k + 1) as f64 / pieces as f64;
                    let a = p0.lerp(p1, t0);
                    let b = p0.lerp(p1, t1);
                    let la = lambda[k.min(lambda.len() - 1)];
                    let lb = lambda[(k + 1).min(lambda.len() - 1)];
                    acc.accumulate(&linear_piece_moments(&a, &b, la, lb));
                }
                acc
            }
        }
    }
}

/// Moments of one straight piece with density interpolating la -> lb.
fn linear_piece_moments(a: &Point, b: &Point, la: f64, lb: f64) -> RawMoments {
    let len = a.distance(b);
    let d = b.sub(a);
    let ac = a.coords();
    let dc = d.coords();
    let m0 = 0.5 * (la + lb);
    let m1 = la / 6.0 + lb / 3.0; // int t·lambda(t) dt
    let m2 = la / 12.0 + lb / 4.0; // int t^2·lambda(t) dt
    let mut first = [0.0; 3];
    let mut second = [[0.0; 3]; 3];
    for i in 0..a.dim() {
        first[i] = len * (ac[i] * m0 + dc[i] * m1);
        for j in 0..a.dim() {
            second[i][j] = len
                * (ac[i] * ac[j] * m0 + (ac[i] * dc[j] + ac[j] * dc[i]) * m1 + dc[i] * dc[j] * m2);
        }
    }
    RawMoments {
        size: len * m0,
        first,
        second,
    }
}

fn trapezoid_mean(samples: &[f64]) -> f64 {
    match samples.len() {
        0 => 0.0,
        1 => samples[0],
        n => {
            let inner: f64 = samples[1..n - 1].iter().sum();
            (0.5 * (samples[0] + samples[n - 1]) + inner) / (n - 1) as f64
        }
    }
}

/// A finite sum of point and segment atoms; candidate mother bodies live
/// here. Serialized form is the measure JSON `{"atoms": [...]}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AtomicMeasure {
    pub atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn point_mass(x: Point, m: f64) -> Self {
        Self {
            atoms: vec![Atom::Point { x, m }],
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(Atom::mass).sum()
    }

    pub fn dim(&self) -> Option<usize> {
        self.atoms.first().map(Atom::dim)
    }

    /// All masses and density samples nonnegative?
    pub fn is_nonnegative(&self) -> bool {
        self.atoms.iter().all(|a| match a {
            Atom::Point { m, .. } => *m >= 0.0,
            Atom::Segment { lambda, .. } => lambda.iter().all(|&l| l >= 0.0),
        })
    }

    /// Smallest mass or density sample (infinite for an empty measure).
    pub fn min_weight(&self) -> f64 {
        self.atoms
            .iter()
            .flat_map(|a| match a {
                Atom::Point { m, .. } => vec![*m],
                Atom::Segment { lambda, .. } => lambda.clone(),
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from x to the support of the measure (infinite if empty).
    pub fn support_distance(&self, x: &Point) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.support_distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Rescale every atom so the total mass becomes `target`.
    pub fn scale_to_mass(&self, target: f64) -> Result<AtomicMeasure, MeasureError> {
        let total = self.total_mass();
        if !(total > 0.0) {
            return Err(MeasureError::ZeroMass);
        }
        let s = target / total;
        let atoms = self
            .atoms
            .iter()
            .map(|a| match a {
                Atom::Point { x, m } => Atom::Point { x: *x, m: m * s },
                Atom::Segment { p0, p1, lambda } => Atom::Segment {
                    p0: *p0,
                    p1: *p1,
                    lambda: lambda.iter().map(|l| l * s).collect(),
                },
            })
            .collect();
        Ok(AtomicMeasure { atoms })
    }

    fn raw_moments(&self) -> RawMoments {
        let mut acc = RawMoments::default();
        for a in &self.atoms {
            acc.accumulate(&a.raw_moments());
        }
        acc
    }
}

/// Either side of the mother-body relation: the body's distribution or an
/// atomic candidate.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Body(BodyMeasure),
    Atomic(AtomicMeasure),
}

impl Measure {
    pub fn dim(&self) -> Option<usize> {
        match self {
            Measure::Body(b) => Some(b.dim()),
            Measure::Atomic(a) => a.dim(),
        }
    }
}

/// Total mass, centroid and second central moments of a measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub total: f64,
    pub centroid: Point,
    /// second central moments, padded to 3x3
    pub second: [[f64; 3]; 3],
}

pub fn total_mass(m: &Measure) -> f64 {
    match m {
        Measure::Body(b) => b.total_mass(),
        Measure::Atomic(a) => a.total_mass(),
    }
}

pub fn moments(m: &Measure) -> Moments {
    let (raw, dim) = match m {
        Measure::Body(b) => (b.raw_moments(), b.dim()),
        Measure::Atomic(a) => (a.raw_moments(), a.dim().unwrap_or(2)),
    };
    let total = raw.size;
    let mut c = [0.0; 3];
    if total > 0.0 {
        for i in 0..3 {
            c[i] = raw.first[i] / total;
        }
    }
    let mut second = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            second[i][j] = raw.second[i][j] - total * c[i] * c[j];
        }
    }
    let centroid = Point::from_coords(&c[..dim]).expect("dim in 1..=3");
    Moments {
        total,
        centroid,
        second,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexPolygon, Point2, SymmetricBody3D};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn shell_total_charge_is_4_pi_r_squared_sigma() {
        let m = BodyMeasure::shell(
            Body::Symmetric(SymmetricBody3D::SphereShell { radius: 1.0 }),
            1.0,
        );
        assert_abs_diff_eq!(m.total_mass(), 4.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn solid_square_mass_is_its_area() {
        let m = BodyMeasure::solid(Body::Polygon(unit_square()));
        assert_abs_diff_eq!(m.total_mass(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn body_mass_splits_into_perimeter_and_area() {
        let m = BodyMeasure::new(Body::Polygon(unit_square()), 0.5, 2.0).unwrap();
        assert_abs_diff_eq!(m.total_mass(), 0.5 * 4.0 + 2.0 * 1.0, epsilon = 1e-12);
    }

    #[test]
    fn constant_segment_mass_is_length_times_density() {
        let a = Atom::Segment {
            p0: Point::d2(0.0, 0.0),
            p1: Point::d2(1.0, 0.0),
            lambda: vec![2.0, 2.0],
        };
        assert_abs_diff_eq!(a.mass(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn linear_segment_mass_is_the_trapezoid() {
        let a = Atom::Segment {
            p0: Point::d2(0.0, 0.0),
            p1: Point::d2(2.0, 0.0),
            lambda: vec![0.0, 1.0, 2.0],
        };
        // mean density = 1, length 2
        assert_abs_diff_eq!(a.mass(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn weights_must_be_admissible() {
        assert!(BodyMeasure::new(Body::Disk { radius: 1.0 }, 0.0, 0.0).is_err());
        assert!(BodyMeasure::new(Body::Disk { radius: 1.0 }, -1.0, 2.0).is_err());
    }

    #[test]
    fn moments_of_unit_square_volume() {
        let m = Measure::Body(BodyMeasure::solid(Body::Polygon(unit_square())));
        let mm = moments(&m);
        assert_abs_diff_eq!(mm.total, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mm.centroid.coords()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(mm.centroid.coords()[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(mm.second[0][0], 1.0 / 12.0, epsilon = 1e-12);
    }

    #[test]
    fn moments_of_single_point_mass() {
        let m = Measure::Atomic(AtomicMeasure::point_mass(Point::d2(1.0, 2.0), 3.0));
        let mm = moments(&m);
        assert_abs_diff_eq!(mm.total, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mm.centroid.coords()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mm.centroid.coords()[1], 2.0, epsilon = 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(mm.second[i][j], 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn moments_of_mirrored_point_pair() {
        let m = Measure::Atomic(AtomicMeasure::new(vec![
            Atom::Point {
                x: Point::d2(-1.0, 0.0),
                m: 1.0,
            },
            Atom::Point {
                x: Point::d2(1.0, 0.0),
                m: 1.0,
            },
        ]));
        let mm = moments(&m);
        assert_abs_diff_eq!(mm.centroid.coords()[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mm.second[0][0], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn scale_to_mass_rescales_everything() {
        let m = AtomicMeasure::point_mass(Point::d2(0.0, 0.0), 2.0);
        let s = m.scale_to_mass(1.0).unwrap();
        assert_abs_diff_eq!(s.total_mass(), 1.0, epsilon = 1e-15);

        let seg = AtomicMeasure::new(vec![Atom::Segment {
            p0: Point::d2(0.0, 0.0),
            p1: Point::d2(1.0, 0.0),
            lambda: vec![1.0, 1.0],
        }]);
        let seg3 = seg.scale_to_mass(3.0).unwrap();
        match &seg3.atoms[0] {
            Atom::Segment { lambda, .. } => {
                assert_abs_diff_eq!(lambda[0], 3.0, epsilon = 1e-15);
                assert_abs_diff_eq!(lambda[1], 3.0, epsilon = 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn empty_measure_cannot_be_rescaled() {
        let m = AtomicMeasure::default();
        assert_eq!(m.scale_to_mass(1.0), Err(MeasureError::ZeroMass));
    }

    #[test]
    fn measure_json_round_trips_in_spec_format() {
        let m = AtomicMeasure::new(vec![
            Atom::Point {
                x: Point::d2(0.5, 0.25),
                m: 2.0,
            },
            Atom::Segment {
                p0: Point::d2(0.0, 0.0),
                p1: Point::d2(1.0, 1.0),
                lambda: vec![0.0, 1.0],
            },
        ]);
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains(r#""type":"point""#));
        assert!(json.contains(r#""type":"segment""#));
        assert!(json.contains(r#""lambda":[0.0,1.0]"#));
        let back: AtomicMeasure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
