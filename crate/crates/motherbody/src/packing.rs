//! Quadtree disk packing of a convex polygon.
//!
//! Truncates the infinite ball-filling construction at a fixed quadtree
//! depth: every cell (any level) that lies fully inside the polygon and
//! clear of the disks already placed on its ancestor path contributes the
//! disk inscribed in the cell as a point mass of the disk's area at the
//! cell center. Cells keep subdividing past a placed disk so the corner
//! gaps fill in at deeper levels.

use crate::geometry::{ConvexPolygon, Point, Point2};
use crate::measure::{Atom, AtomicMeasure};
use std::f64::consts::PI;

#[derive(Clone, Copy)]
struct Cell {
    center: Point2,
    half: f64,
}

impl Cell {
    fn corners(&self) -> [Point2; 4] {
        let (c, h) = (self.center, self.half);
        [
            Point2::new(c.x - h, c.y - h),
            Point2::new(c.x + h, c.y - h),
            Point2::new(c.x + h, c.y + h),
            Point2::new(c.x - h, c.y + h),
        ]
    }

    fn children(&self) -> [Cell; 4] {
        let h = self.half / 2.0;
        let (cx, cy) = (self.center.x, self.center.y);
        [
            Cell {
                center: Point2::new(cx - h, cy - h),
                half: h,
            },
            Cell {
                center: Point2::new(cx + h, cy - h),
                half: h,
            },
            Cell {
                center: Point2::new(cx - h, cy + h),
                half: h,
            },
            Cell {
                center: Point2::new(cx + h, cy + h),
                half: h,
            },
        ]
    }

    /// Distance from a point to this cell (0 if inside).
    fn distance_to(&self, p: Point2) -> f64 {
        let dx = (p.x - self.center.x).abs() - self.half;
        let dy = (p.y - self.center.y).abs() - self.half;
        dx.max(0.0).hypot(dy.max(0.0))
    }
}

struct Packer<'a> {
    poly: &'a ConvexPolygon,
    // inward edge normals with offsets, for the fully-outside test
    planes: Vec<(Point2, f64)>,
    disks: Vec<(Point2, f64)>,
    max_depth: usize,
}

impl Packer<'_> {
    fn cell_inside(&self, cell: &Cell) -> bool {
        cell.corners().iter().all(|&c| self.poly.contains(c))
    }

    fn cell_outside(&self, cell: &Cell) -> bool {
        self.planes
            .iter()
            .any(|&(n, off)| cell.corners().iter().all(|c| n.dot(*c) - off < 0.0))
    }

    fn recurse(&mut self, cell: Cell, depth: usize, ancestors: &mut Vec<(Point2, f64)>) {
        if self.cell_outside(&cell) {
            return;
        }
        let mut placed = false;
        if self.cell_inside(&cell) {
            let clear = ancestors
                .iter()
                .all(|&(c, r)| cell.distance_to(c) >= r - 1e-12);
            if clear {
                self.disks.push((cell.center, cell.half));
                ancestors.push((cell.center, cell.half));
                placed = true;
            }
        }
        if depth < self.max_depth {
            for child in cell.children() {
                self.recurse(child, depth + 1, ancestors);
            }
        }
        if placed {
            ancestors.pop();
        }
    }
}

/// Pack disjoint disks into the polygon down to the given quadtree depth.
///
/// Returns the point-mass measure (mass pi·r^2 at each disk center) and the
/// uncovered area: polygon area minus the packed disk area.
pub fn ball_packing(poly: &ConvexPolygon, depth: usize) -> (AtomicMeasure, f64) {
    assert!(depth >= 1, "packing depth must be at least 1");
    let (lo, hi) = poly.bounding_box();
    let half = 0.5 * (hi.x - lo.x).max(hi.y - lo.y);
    let root = Cell {
        center: Point2::new(0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)),
        half,
    };

    let planes = poly
        .edge_iter()
        .map(|(a, b)| {
            let d = b - a;
            let len = d.norm();
            let n = Point2::new(-d.y / len, d.x / len);
            (n, n.dot(a))
        })
        .collect();

    let mut packer = Packer {
        poly,
        planes,
        disks: Vec::new(),
        max_depth: depth,
    };
    packer.recurse(root, 1, &mut Vec::new());

    let atoms: Vec<Atom> = packer
        .disks
        .iter()
        .map(|&(c, r)| Atom::Point {
            x: Point::d2(c.x, c.y),
            m: PI * r * r,
        })
        .collect();
    let covered: f64 = packer.disks.iter().map(|&(_, r)| PI * r * r).sum();
    (AtomicMeasure::new(atoms), poly.area() - covered)
}
