//! Invariant checks: linearity, far-field behavior, symmetry, packing
//! disjointness, solver feasibility, and serialization round-trips.

use motherbody::geometry::{medial_axis, ConvexPolygon, Point2, SkeletonGraph};
use motherbody::measure::{total_mass, Atom, AtomicMeasure, BodyMeasure, Measure};
use motherbody::nnls::{self, Matrix, NnlsOptions};
use motherbody::packing::ball_packing;
use motherbody::potential::{
    cylinder_potential_closed, line_potential_closed, potential_atomic, potential_body_quadrature,
    Kernel,
};
use motherbody::{Body, Point};
use proptest::collection::vec;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
    ConvexPolygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
}

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

/// Strictly convex polygons: distinct angles on an ellipse, then an affine map.
fn convex_polygon() -> impl Strategy<Value = ConvexPolygon> {
    (3usize..=8)
        .prop_flat_map(|n| {
            (
                vec(0.0..TAU, n),
                0.5..2.0f64,
                0.5..2.0f64,
                0.0..TAU,
                -2.0..2.0f64,
                -2.0..2.0f64,
            )
        })
        .prop_filter_map(
            "degenerate angle spacing",
            |(mut angles, sx, sy, rot, tx, ty)| {
                angles.sort_by(f64::total_cmp);
                let n = angles.len();
                for i in 0..n {
                    let gap = if i + 1 < n {
                        angles[i + 1] - angles[i]
                    } else {
                        TAU - angles[i] + angles[0]
                    };
                    if gap < 0.25 {
                        return None;
                    }
                }
                let pts = angles
                    .iter()
                    .map(|a| {
                        let (x, y) = (sx * a.cos(), sy * a.sin());
                        Point2::new(
                            tx + x * rot.cos() - y * rot.sin(),
                            ty + x * rot.sin() + y * rot.cos(),
                        )
                    })
                    .collect();
                ConvexPolygon::new(pts).ok()
            },
        )
}

fn atom_2d() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (-1.0..1.0f64, -1.0..1.0f64, 0.0..5.0f64).prop_map(|(x, y, m)| Atom::Point {
            x: Point::d2(x, y),
            m
        }),
        (
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
            vec(0.0..3.0f64, 2..6)
        )
            .prop_filter_map("zero-length segment", |(x0, y0, x1, y1, lambda)| {
                let p0 = Point2::new(x0, y0);
                let p1 = Point2::new(x1, y1);
                (p0.distance(p1) > 1e-3).then(|| Atom::Segment {
                    p0: Point::d2(x0, y0),
                    p1: Point::d2(x1, y1),
                    lambda,
                })
            })
    ]
}

// ---------------------------------------------------------------------------
// potential properties
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn potential_is_linear_in_the_measure(
        atoms1 in vec(atom_2d(), 1..4),
        atoms2 in vec(atom_2d(), 1..4),
        angle in 0.0..TAU,
    ) {
        let kernel = Kernel::new(2);
        let x = Point::d2(3.5 * angle.cos(), 3.5 * angle.sin());
        let m1 = AtomicMeasure::new(atoms1.clone());
        let m2 = AtomicMeasure::new(atoms2.clone());
        let mut all = atoms1;
        all.extend(atoms2);
        let joint = AtomicMeasure::new(all);

        let u1 = potential_atomic(&kernel, &m1, &x).unwrap().value;
        let u2 = potential_atomic(&kernel, &m2, &x).unwrap().value;
        let u = potential_atomic(&kernel, &joint, &x).unwrap().value;
        let scale = u1.abs() + u2.abs() + 1.0;
        prop_assert!((u - (u1 + u2)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn far_field_ratio_recovers_total_mass(atoms in vec(atom_2d(), 1..5), dir in 0.0..TAU) {
        let kernel = Kernel::new(2);
        let m = AtomicMeasure::new(atoms);
        let mass = m.total_mass();
        prop_assume!(mass > 1e-6);
        // support fits in a diameter-4 disk around the origin
        let r = 4.0e6;
        let x = Point::d2(r * dir.cos(), r * dir.sin());
        let u = potential_atomic(&kernel, &m, &x).unwrap().value;
        let recovered = u / (-(1.0 / (2.0 * PI)) * r.ln());
        prop_assert!(
            (recovered - mass).abs() <= 1e-3 * mass,
            "recovered {} vs mass {}", recovered, mass
        );
    }

    #[test]
    fn exterior_potential_is_discretely_harmonic(
        atoms in vec(atom_2d(), 1..4),
        angle in 0.0..TAU,
        radius in 2.0..5.0f64,
    ) {
        let kernel = Kernel::new(2);
        let m = AtomicMeasure::new(atoms);
        let h = 1e-3;
        let (cx, cy) = (radius * angle.cos(), radius * angle.sin());
        let u = |dx: f64, dy: f64| {
            potential_atomic(&kernel, &m, &Point::d2(cx + dx, cy + dy)).unwrap().value
        };
        let lap = (u(h, 0.0) + u(-h, 0.0) + u(0.0, h) + u(0.0, -h) - 4.0 * u(0.0, 0.0)) / (h * h);
        prop_assert!(lap.abs() < 1e-4, "discrete Laplacian {}", lap);
    }
}

#[test]
fn cylinder_and_line_closed_forms_are_one_identity() {
    // grid over radius, density, and exterior distance with a = 2R
    for i in 0..10 {
        let radius = 0.3 + 0.25 * i as f64;
        for j in 0..10 {
            let rho = 0.2 + 0.45 * j as f64;
            for k in 0..10 {
                let r = radius * (2.1 + 0.5 * k as f64);
                let a = 2.0 * radius;
                let v1 = cylinder_potential_closed(radius, rho, r, a, 1.0).unwrap();
                let v2 = line_potential_closed(PI * radius * radius * rho, r, a, 1.0).unwrap();
                assert!(
                    (v1 - v2).abs() <= 1e-14,
                    "identity broke at R={radius} rho={rho} r={r}: {v1} vs {v2}"
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// geometry properties
// ---------------------------------------------------------------------------

fn skeleton_maps_to_itself(sk: &SkeletonGraph, map: impl Fn(Point2) -> Point2, tol: f64) -> bool {
    sk.edges.iter().all(|&(i, j)| {
        let a = map(sk.nodes[i]);
        let b = map(sk.nodes[j]);
        sk.edges.iter().any(|&(p, q)| {
            let (c, d) = (sk.nodes[p], sk.nodes[q]);
            (a.distance(c) <= tol && b.distance(d) <= tol)
                || (a.distance(d) <= tol && b.distance(c) <= tol)
        })
    })
}

#[test]
fn skeletons_inherit_the_polygon_symmetries() {
    // square: the full dihedral group of order 8
    let sq = poly(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]);
    let sk = medial_axis(&sq).unwrap();
    let maps: Vec<Box<dyn Fn(Point2) -> Point2>> = vec![
        Box::new(|p: Point2| Point2::new(-p.y, p.x)),
        Box::new(|p: Point2| Point2::new(-p.x, -p.y)),
        Box::new(|p: Point2| Point2::new(p.y, -p.x)),
        Box::new(|p: Point2| Point2::new(-p.x, p.y)),
        Box::new(|p: Point2| Point2::new(p.x, -p.y)),
        Box::new(|p: Point2| Point2::new(p.y, p.x)),
        Box::new(|p: Point2| Point2::new(-p.y, -p.x)),
    ];
    for map in maps {
        assert!(skeleton_maps_to_itself(&sk, map, 1e-9));
    }

    // rectangle: the Klein four-group
    let rect = poly(&[(-1.0, -0.5), (1.0, -0.5), (1.0, 0.5), (-1.0, 0.5)]);
    let sk = medial_axis(&rect).unwrap();
    for map in [
        |p: Point2| Point2::new(-p.x, p.y),
        |p: Point2| Point2::new(p.x, -p.y),
        |p: Point2| Point2::new(-p.x, -p.y),
    ] {
        assert!(skeleton_maps_to_itself(&sk, map, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn skeleton_structure_invariants(p in convex_polygon()) {
        let sk = medial_axis(&p).unwrap();
        prop_assert!(sk.is_connected());
        // length < perimeter holds only up to pentagons: a regular n-gon's
        // skeleton is n spokes of the circumradius, which beats the
        // perimeter 2nR sin(pi/n) once n > 6
        if p.len() <= 5 {
            prop_assert!(sk.total_length() < p.perimeter());
        }
        prop_assert!(sk.total_length() < p.len() as f64 * p.circumradius() + 1e-9);

        // every leaf is a polygon vertex
        let verts = p.vertices();
        for leaf in sk.leaves() {
            let pos = sk.nodes[leaf];
            let near = verts.iter().any(|v| v.distance(pos) <= 1e-9 * (1.0 + p.circumradius()));
            prop_assert!(near, "leaf {:?} is not a corner", pos);
        }

        // edge midpoints are strictly interior
        for &(i, j) in &sk.edges {
            let mid = (sk.nodes[i] + sk.nodes[j]) * 0.5;
            let r = p.inscribed_radius(mid).unwrap();
            prop_assert!(r > 0.0, "midpoint {:?} not interior", mid);
        }
    }

    #[test]
    fn packed_disks_are_disjoint_and_inside(p in convex_polygon()) {
        let (m, residual) = ball_packing(&p, 5);
        prop_assert!(residual >= 0.0);
        let disks: Vec<(Point2, f64)> = m
            .atoms
            .iter()
            .map(|a| match a {
                Atom::Point { x, m } => {
                    (Point2::new(x.coords()[0], x.coords()[1]), (m / PI).sqrt())
                }
                _ => unreachable!("packing emits point atoms"),
            })
            .collect();
        for (i, &(ci, ri)) in disks.iter().enumerate() {
            prop_assert!(p.inscribed_radius(ci).unwrap() >= ri - 1e-12);
            for &(cj, rj) in &disks[i + 1..] {
                prop_assert!(ci.distance(cj) >= ri + rj - 1e-12);
            }
        }
    }

    #[test]
    fn body_mass_is_weighted_perimeter_plus_area(
        p in convex_polygon(),
        a in 0.0..3.0f64,
        b in 0.0..3.0f64,
    ) {
        prop_assume!(a + b > 1e-9);
        let m = BodyMeasure::new(Body::Polygon(p.clone()), a, b).unwrap();
        let expect = a * p.perimeter() + b * p.area();
        let scale = expect.abs().max(1.0);
        prop_assert!((total_mass(&Measure::Body(m)) - expect).abs() <= 1e-12 * scale);
    }
}

// ---------------------------------------------------------------------------
// solver properties
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nnls_solutions_are_feasible_and_kkt(
        entries in vec(-1.0..1.0f64, 24),
        y in vec(-1.0..1.0f64, 8),
    ) {
        let (rows, cols) = (8, 3);
        let mut a = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                a.set(r, c, entries[r * cols + c]);
            }
        }
        let lam = 1e-9;
        let opts = NnlsOptions { regularization: lam, ..NnlsOptions::default() };
        let sol = match nnls::solve(&a, &y, &opts) {
            Ok(s) => s,
            Err(_) => return Ok(()), // genuinely degenerate draw
        };
        for &c in &sol.coefficients {
            prop_assert!(c >= 0.0);
        }
        // KKT: gradient nonnegative on the active set, ~zero on the free set
        let g = a.gram();
        let b0 = a.transpose_mul_vec(&y);
        for j in 0..cols {
            let mut grad = -b0[j] + lam * sol.coefficients[j];
            for k in 0..cols {
                grad += g.get(j, k) * sol.coefficients[k];
            }
            if sol.coefficients[j] > 0.0 {
                prop_assert!(grad.abs() <= 1e-7, "free gradient {} at {}", grad, j);
            } else {
                prop_assert!(grad >= -1e-7, "active gradient {} at {}", grad, j);
            }
        }
    }

    #[test]
    fn measure_json_round_trips(atoms in vec(atom_2d(), 0..5)) {
        let m = AtomicMeasure::new(atoms);
        let json = serde_json::to_string(&m).unwrap();
        let back: AtomicMeasure = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn skeleton_json_round_trips(p in convex_polygon()) {
        let sk = medial_axis(&p).unwrap();
        let json = serde_json::to_string(&sk).unwrap();
        let back: SkeletonGraph = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, sk);
    }
}

// ---------------------------------------------------------------------------
// body quadrature harmonicity (fixed cases; correlated panel errors cancel)
// ---------------------------------------------------------------------------

#[test]
fn polygon_body_potential_is_discretely_harmonic_outside() {
    let kernel = Kernel::new(2);
    let body = BodyMeasure::solid(Body::Polygon(poly(&[
        (-1.0, -1.0),
        (1.0, -1.0),
        (1.0, 1.0),
        (-1.0, 1.0),
    ])));
    let h = 1e-3;
    for (cx, cy) in [(2.5, 0.0), (0.0, 3.0), (-2.2, 1.9)] {
        let u = |dx: f64, dy: f64| {
            potential_body_quadrature(&kernel, &body, &Point::d2(cx + dx, cy + dy))
                .unwrap()
                .value
        };
        let lap = (u(h, 0.0) + u(-h, 0.0) + u(0.0, h) + u(0.0, -h) - 4.0 * u(0.0, 0.0)) / (h * h);
        assert!(lap.abs() < 1e-4, "discrete Laplacian {lap} at ({cx}, {cy})");
    }
}
