//! Geometric regions: convex polygons, symmetric 3D bodies, and the
//! medial-axis skeleton of convex polygons.

mod medial;

pub use medial::{medial_axis, SkeletonGraph};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("polygon needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex (reflex or collinear vertex at index {0})")]
    NonConvex(usize),
    #[error("polygon has degenerate (zero) area")]
    DegenerateArea,
    #[error("point ({0}, {1}) lies outside the polygon")]
    OutsidePolygon(f64, f64),
    #[error("wavefront event times indistinguishable below tolerance")]
    NumericCollapse,
}

/// A point in the plane. Doubles as a 2D vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product, treating both as vectors.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Distance from this point to the closed segment [a, b].
    pub fn distance_to_segment(self, a: Point2, b: Point2) -> f64 {
        let d = b - a;
        let len2 = d.dot(d);
        if len2 <= 0.0 {
            return self.distance(a);
        }
        let t = ((self - a).dot(d) / len2).clamp(0.0, 1.0);
        self.distance(a + d * t)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = <[f64; 2]>::deserialize(d)?;
        Ok(Point2::new(v[0], v[1]))
    }
}

/// A point in 1, 2 or 3 dimensions; the dimension is fixed per scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    coords: [f64; 3],
    dim: usize,
}

impl Point {
    pub fn d1(x: f64) -> Self {
        Self {
            coords: [x, 0.0, 0.0],
            dim: 1,
        }
    }

    pub fn d2(x: f64, y: f64) -> Self {
        Self {
            coords: [x, y, 0.0],
            dim: 2,
        }
    }

    pub fn d3(x: f64, y: f64, z: f64) -> Self {
        Self {
            coords: [x, y, z],
            dim: 3,
        }
    }

    pub fn from_coords(coords: &[f64]) -> Option<Self> {
        match coords.len() {
            1 => Some(Self::d1(coords[0])),
            2 => Some(Self::d2(coords[0], coords[1])),
            3 => Some(Self::d3(coords[0], coords[1], coords[2])),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(&self, o: &Point) -> f64 {
        debug_assert_eq!(self.dim, o.dim);
        (0..3)
            .map(|i| (self.coords[i] - o.coords[i]).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, o: &Point) -> Point {
        debug_assert_eq!(self.dim, o.dim);
        Point {
            coords: [
                self.coords[0] - o.coords[0],
                self.coords[1] - o.coords[1],
                self.coords[2] - o.coords[2],
            ],
            dim: self.dim,
        }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point {
            coords: [
                self.coords[0] + o.coords[0],
                self.coords[1] + o.coords[1],
                self.coords[2] + o.coords[2],
            ],
            dim: self.dim,
        }
    }

    pub fn scale(&self, s: f64) -> Point {
        Point {
            coords: [self.coords[0] * s, self.coords[1] * s, self.coords[2] * s],
            dim: self.dim,
        }
    }

    /// Linear interpolation between two points of equal dimension.
    pub fn lerp(&self, o: &Point, t: f64) -> Point {
        self.add(&o.sub(self).scale(t))
    }

    /// Distance from this point to the closed segment [a, b].
    pub fn distance_to_segment(&self, a: &Point, b: &Point) -> f64 {
        let d = b.sub(a);
        let len2 = d.coords.iter().map(|c| c * c).sum::<f64>();
        if len2 <= 0.0 {
            return self.distance(a);
        }
        let w = self.sub(a);
        let t = (w
            .coords
            .iter()
            .zip(&d.coords)
            .map(|(u, v)| u * v)
            .sum::<f64>()
            / len2)
            .clamp(0.0, 1.0);
        self.distance(&a.add(&d.scale(t)))
    }
}

impl From<Point2> for Point {
    fn from(p: Point2) -> Point {
        Point::d2(p.x, p.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        Point::from_coords(&v).ok_or_else(|| {
            D::Error::custom(format!("point must have 1..=3 coords, got {}", v.len()))
        })
    }
}

/// A strictly convex polygon stored as a CCW vertex list.
///
/// Construction goes through [`ConvexPolygon::new`], which deduplicates,
/// normalizes orientation, and rejects reflex or degenerate input.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<Point2>::deserialize(d)?;
        ConvexPolygon::new(vs).map_err(D::Error::custom)
    }
}

impl ConvexPolygon {
    /// Validate and normalize a vertex list into a convex polygon.
    ///
    /// Accepts either orientation; the stored order is CCW. Consecutive
    /// duplicate vertices are dropped first.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let scale = vertices
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0f64, f64::max)
            .max(1.0);
        let eps = 1e-12 * scale;

        let mut vs: Vec<Point2> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(GeometryError::DegenerateArea);
            }
            if vs.last().is_none_or(|q| q.distance(p) > eps) {
                vs.push(p);
            }
        }
        while vs.len() > 1 && vs[0].distance(*vs.last().unwrap()) <= eps {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(GeometryError::TooFewVertices(vs.len()));
        }

        let two_area: f64 = shoelace(&vs);
        if two_area.abs() <= eps * eps {
            return Err(GeometryError::DegenerateArea);
        }
        if two_area < 0.0 {
            vs.reverse();
        }

        // strict convexity: every consecutive edge pair turns left
        let n = vs.len();
        for i in 0..n {
            let a = vs[i];
            let b = vs[(i + 1) % n];
            let c = vs[(i + 2) % n];
            if (b - a).cross(c - b) <= eps * eps {
                return Err(GeometryError::NonConvex((i + 1) % n));
            }
        }
        Ok(Self { vertices: vs })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        0.5 * shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edge_iter().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn centroid(&self) -> Point2 {
        let mut cx = 0.0;
        let mut cy = 0.0;
        for (a, b) in self.edge_iter() {
            let w = a.cross(b);
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        let a6 = 6.0 * self.area();
        Point2::new(cx / a6, cy / a6)
    }

    /// Largest distance from the centroid to a vertex.
    pub fn circumradius(&self) -> f64 {
        let c = self.centroid();
        self.vertices
            .iter()
            .map(|v| v.distance(c))
            .fold(0.0, f64::max)
    }

    pub fn edge_iter(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// The open edges (faces) of the polygon, one per vertex.
    pub fn faces(&self) -> Vec<(Point2, Point2)> {
        self.edge_iter().collect()
    }

    /// Signed distance of x to the half-plane of every edge; the minimum is
    /// positive inside, negative outside.
    fn min_edge_distance(&self, x: Point2) -> f64 {
        let mut min = f64::INFINITY;
        for (a, b) in self.edge_iter() {
            let d = b - a;
            let len = d.norm();
            // inward normal of a CCW edge
            let n = Point2::new(-d.y / len, d.x / len);
            min = min.min(n.dot(x - a));
        }
        min
    }

    pub fn contains(&self, x: Point2) -> bool {
        self.min_edge_distance(x) >= -1e-12 * (1.0 + self.circumradius())
    }

    /// Distance from an interior point to the boundary.
    pub fn inscribed_radius(&self, x: Point2) -> Result<f64, GeometryError> {
        let d = self.min_edge_distance(x);
        if d < -1e-12 * (1.0 + self.circumradius()) {
            return Err(GeometryError::OutsidePolygon(x.x, x.y));
        }
        Ok(d.max(0.0))
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Raw area moments about the origin: (size, first, second).
    pub fn volume_moments(&self) -> RawMoments {
        let mut size = 0.0;
        let mut fx = 0.0;
        let mut fy = 0.0;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        let mut sxy = 0.0;
        for (a, b) in self.edge_iter() {
            let w = a.cross(b);
            size += w;
            fx += (a.x + b.x) * w;
            fy += (a.y + b.y) * w;
            sxx += (a.x * a.x + a.x * b.x + b.x * b.x) * w;
            syy += (a.y * a.y + a.y * b.y + b.y * b.y) * w;
            sxy += (a.x * b.y + 2.0 * a.x * a.y + 2.0 * b.x * b.y + b.x * a.y) * w;
        }
        RawMoments {
            size: size / 2.0,
            first: [fx / 6.0, fy / 6.0, 0.0],
            second: second_matrix(sxx / 12.0, syy / 12.0, sxy / 24.0),
        }
    }

    /// Raw boundary (wire) moments about the origin.
    pub fn boundary_moments(&self) -> RawMoments {
        let mut m = RawMoments::default();
        for (a, b) in self.edge_iter() {
            m.accumulate(&segment_moments(a, b));
        }
        m
    }
}

fn shoelace(vs: &[Point2]) -> f64 {
    let n = vs.len();
    (0..n).map(|i| vs[i].cross(vs[(i + 1) % n])).sum()
}

/// Size, first moments and second moments (about the origin) of a measure.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RawMoments {
    pub size: f64,
    pub first: [f64; 3],
    pub second: [[f64; 3]; 3],
}

impl RawMoments {
    pub fn accumulate(&mut self, o: &RawMoments) {
        self.size += o.size;
        for i in 0..3 {
            self.first[i] += o.first[i];
            for j in 0..3 {
                self.second[i][j] += o.second[i][j];
            }
        }
    }

    pub fn scaled(&self, s: f64) -> RawMoments {
        let mut out = *self;
        out.size *= s;
        for i in 0..3 {
            out.first[i] *= s;
            for j in 0..3 {
                out.second[i][j] *= s;
            }
        }
        out
    }
}

fn second_matrix(xx: f64, yy: f64, xy: f64) -> [[f64; 3]; 3] {
    [[xx, xy, 0.0], [xy, yy, 0.0], [0.0, 0.0, 0.0]]
}

/// Moments of a uniform unit-density wire along the segment [a, b].
pub fn segment_moments(a: Point2, b: Point2) -> RawMoments {
    let len = a.distance(b);
    let d = b - a;
    let fx = len * (a.x + 0.5 * d.x);
    let fy = len * (a.y + 0.5 * d.y);
    let sxx = len * (a.x * a.x + a.x * d.x + d.x * d.x / 3.0);
    let syy = len * (a.y * a.y + a.y * d.y + d.y * d.y / 3.0);
    let sxy = len * (a.x * a.y + 0.5 * (a.x * d.y + a.y * d.x) + d.x * d.y / 3.0);
    RawMoments {
        size: len,
        first: [fx, fy, 0.0],
        second: second_matrix(sxx, syy, sxy),
    }
}

/// Rotationally symmetric 3D bodies, centered on the z-axis.
///
/// The sphere shell and solid ball are centered at the origin. The solid
/// cylinder spans z in [-L/2, L/2]. The cone surface (lateral only, no base
/// disk) has its apex at the origin and base circle of the given radius at
/// z = height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SymmetricBody3D {
    SphereShell { radius: f64 },
    SolidBall { radius: f64 },
    SolidCylinder { radius: f64, length: f64 },
    ConeSurface { radius: f64, height: f64 },
}

impl SymmetricBody3D {
    pub fn is_valid(&self) -> bool {
        match *self {
            SymmetricBody3D::SphereShell { radius } | SymmetricBody3D::SolidBall { radius } => {
                radius > 0.0
            }
            SymmetricBody3D::SolidCylinder { radius, length } => radius > 0.0 && length > 0.0,
            SymmetricBody3D::ConeSurface { radius, height } => radius > 0.0 && height > 0.0,
        }
    }

    pub fn boundary_moments(&self) -> RawMoments {
        use std::f64::consts::PI;
        match *self {
            SymmetricBody3D::SphereShell { radius: r }
            | SymmetricBody3D::SolidBall { radius: r } => {
                let area = 4.0 * PI * r * r;
                RawMoments {
                    size: area,
                    first: [0.0; 3],
                    second: diag3(area * r * r / 3.0, area * r * r / 3.0, area * r * r / 3.0),
                }
            }
            SymmetricBody3D::SolidCylinder {
                radius: r,
                length: l,
            } => {
                let lateral = 2.0 * PI * r * l;
                let caps = 2.0 * PI * r * r;
                let sxx = lateral * r * r / 2.0 + 2.0 * (PI * r.powi(4) / 4.0);
                let szz = lateral * l * l / 12.0 + caps * (l / 2.0) * (l / 2.0);
                RawMoments {
                    size: lateral + caps,
                    first: [0.0; 3],
                    second: diag3(sxx, sxx, szz),
                }
            }
            SymmetricBody3D::ConeSurface {
                radius: r,
                height: h,
            } => {
                let slant = r.hypot(h);
                let area = PI * r * slant;
                let sxx = PI * r.powi(3) * slant / 4.0;
                let szz = PI * r * h * h * slant / 2.0;
                RawMoments {
                    size: area,
                    first: [0.0, 0.0, area * 2.0 * h / 3.0],
                    second: diag3(sxx, sxx, szz),
                }
            }
        }
    }

    pub fn volume_moments(&self) -> RawMoments {
        use std::f64::consts::PI;
        match *self {
            // surface-type bodies carry no volume
            SymmetricBody3D::SphereShell { .. } | SymmetricBody3D::ConeSurface { .. } => {
                RawMoments::default()
            }
            SymmetricBody3D::SolidBall { radius: r } => {
                let vol = 4.0 / 3.0 * PI * r.powi(3);
                let s = 4.0 / 15.0 * PI * r.powi(5);
                RawMoments {
                    size: vol,
                    first: [0.0; 3],
                    second: diag3(s, s, s),
                }
            }
            SymmetricBody3D::SolidCylinder {
                radius: r,
                length: l,
            } => {
                let vol = PI * r * r * l;
                RawMoments {
                    size: vol,
                    first: [0.0; 3],
                    second: diag3(vol * r * r / 4.0, vol * r * r / 4.0, vol * l * l / 12.0),
                }
            }
        }
    }
}

fn diag3(a: f64, b: f64, c: f64) -> [[f64; 3]; 3] {
    [[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]]
}

/// Any supported region shape: 2D polygon or disk, or a symmetric 3D body.
///
/// The disk is centered at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Body {
    Polygon(ConvexPolygon),
    Disk { radius: f64 },
    Symmetric(SymmetricBody3D),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polygon(_) | Body::Disk { .. } => 2,
            Body::Symmetric(_) => 3,
        }
    }

    pub fn boundary_moments(&self) -> RawMoments {
        use std::f64::consts::PI;
        match self {
            Body::Polygon(p) => p.boundary_moments(),
            Body::Disk { radius: r } => RawMoments {
                size: 2.0 * PI * r,
                first: [0.0; 3],
                second: second_matrix(PI * r.powi(3), PI * r.powi(3), 0.0),
            },
            Body::Symmetric(s) => s.boundary_moments(),
        }
    }

    pub fn volume_moments(&self) -> RawMoments {
        use std::f64::consts::PI;
        match self {
            Body::Polygon(p) => p.volume_moments(),
            Body::Disk { radius: r } => RawMoments {
                size: PI * r * r,
                first: [0.0; 3],
                second: second_matrix(PI * r.powi(4) / 4.0, PI * r.powi(4) / 4.0, 0.0),
            },
            Body::Symmetric(s) => s.volume_moments(),
        }
    }

    /// Distance from the body's reference center within which the whole body
    /// fits. Used to place exterior sample rings.
    pub fn circumradius(&self) -> f64 {
        match self {
            Body::Polygon(p) => p.circumradius(),
            Body::Disk { radius } => *radius,
            Body::Symmetric(SymmetricBody3D::SphereShell { radius })
            | Body::Symmetric(SymmetricBody3D::SolidBall { radius }) => *radius,
            Body::Symmetric(SymmetricBody3D::SolidCylinder { radius, length }) => {
                radius.hypot(length / 2.0)
            }
            Body::Symmetric(SymmetricBody3D::ConeSurface { radius, height }) => {
                // apex at origin: farthest body point is the base rim
                radius.hypot(*height)
            }
        }
    }

    /// True when x lies strictly outside the closed body, with tolerance.
    pub fn is_exterior(&self, x: &Point, clearance: f64) -> bool {
        match self {
            Body::Polygon(p) => {
                let q = Point2::new(x.coords()[0], x.coords()[1]);
                p.min_edge_distance(q) < -clearance
            }
            Body::Disk { radius } => x.norm() > radius + clearance,
            Body::Symmetric(s) => {
                let c = x.coords();
                let (rho, z) = (c[0].hypot(c[1]), c[2]);
                match *s {
                    SymmetricBody3D::SphereShell { radius }
                    | SymmetricBody3D::SolidBall { radius } => x.norm() > radius + clearance,
                    SymmetricBody3D::SolidCylinder { radius, length } => {
                        rho > radius + clearance || z.abs() > length / 2.0 + clearance
                    }
                    SymmetricBody3D::ConeSurface { radius, height } => {
                        // distance to the lateral surface of the cone
                        cone_surface_distance(radius, height, rho, z) > clearance
                    }
                }
            }
        }
    }
}

/// Distance from a point (in cylindrical coordinates rho, z) to the lateral
/// cone surface with apex at the origin and base radius R at z = h.
pub fn cone_surface_distance(r: f64, h: f64, rho: f64, z: f64) -> f64 {
    // generator segment in the (rho, z) half-plane: (0,0) -> (r, h)
    let p = Point2::new(rho, z);
    p.distance_to_segment(Point2::new(0.0, 0.0), Point2::new(r, h))
}
