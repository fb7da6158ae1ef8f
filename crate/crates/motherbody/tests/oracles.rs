//! Brute-force oracles, independent of the library's evaluation paths,
//! pinning the quadrature and skeleton results.

use motherbody::geometry::{medial_axis, ConvexPolygon, Point2};
use motherbody::measure::{Atom, AtomicMeasure, BodyMeasure};
use motherbody::packing::ball_packing;
use motherbody::potential::{
    potential_atomic, potential_body_quadrature, shell_potential_closed, ElectroConstants, Kernel,
};
use motherbody::{Body, Point, SymmetricBody3D};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn poly(pts: &[(f64, f64)]) -> ConvexPolygon {
    ConvexPolygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
}

// ---------------------------------------------------------------------------
// line quadrature vs a dense composite midpoint (Riemann) sum
// ---------------------------------------------------------------------------

/// Composite midpoint rule for the segment potential, dense enough that its
/// own truncation error sits far below the comparison tolerance.
fn riemann_segment_potential(
    p0: Point2,
    p1: Point2,
    lambda: impl Fn(f64) -> f64,
    x: Point2,
    steps: usize,
) -> f64 {
    let len = p0.distance(p1);
    let mut sum = 0.0;
    for i in 0..steps {
        let t = (i as f64 + 0.5) / steps as f64;
        let p = p0 + (p1 - p0) * t;
        sum += lambda(t) * (-(1.0 / (2.0 * PI)) * x.distance(p).ln());
    }
    sum * len / steps as f64
}

#[test]
fn segment_potential_matches_brute_force_riemann_sum() {
    let kernel = Kernel::new(2);
    let m = AtomicMeasure::new(vec![Atom::Segment {
        p0: Point::d2(-1.0, 0.0),
        p1: Point::d2(1.0, 0.0),
        lambda: vec![1.0, 1.0],
    }]);
    let x = Point::d2(0.0, 2.0);
    let got = potential_atomic(&kernel, &m, &x).unwrap().value;
    let oracle = riemann_segment_potential(
        Point2::new(-1.0, 0.0),
        Point2::new(1.0, 0.0),
        |_| 1.0,
        Point2::new(0.0, 2.0),
        1 << 16,
    );
    assert!(
        (got - oracle).abs() < 1e-8,
        "quadrature {got} vs riemann {oracle}, diff {}",
        (got - oracle).abs()
    );
}

#[test]
fn linear_density_segment_matches_brute_force() {
    let kernel = Kernel::new(2);
    let m = AtomicMeasure::new(vec![Atom::Segment {
        p0: Point::d2(0.0, -1.0),
        p1: Point::d2(0.5, 1.0),
        lambda: vec![0.25, 2.0],
    }]);
    let x = Point::d2(-1.5, 0.5);
    let got = potential_atomic(&kernel, &m, &x).unwrap().value;
    let oracle = riemann_segment_potential(
        Point2::new(0.0, -1.0),
        Point2::new(0.5, 1.0),
        |t| 0.25 + (2.0 - 0.25) * t,
        Point2::new(-1.5, 0.5),
        1 << 16,
    );
    assert!((got - oracle).abs() < 1e-8, "diff {}", (got - oracle).abs());
}

// ---------------------------------------------------------------------------
// polygon area quadrature vs seeded Monte Carlo
// ---------------------------------------------------------------------------

#[test]
fn square_potential_agrees_with_monte_carlo_within_3_sigma() {
    let kernel = Kernel::new(2);
    let square = poly(&[(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]);
    let body = BodyMeasure::solid(Body::Polygon(square));
    let x = Point::d2(2.0, 0.0);
    let got = potential_body_quadrature(&kernel, &body, &x).unwrap().value;

    let mut rng = ChaCha8Rng::seed_from_u64(20_260_808);
    let n = 1_000_000usize;
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n {
        let px = rng.random::<f64>() - 0.5;
        let py = rng.random::<f64>() - 0.5;
        let d2 = (2.0 - px) * (2.0 - px) + py * py;
        let v = -(1.0 / (4.0 * PI)) * d2.ln();
        sum += v;
        sumsq += v * v;
    }
    let mean = sum / n as f64;
    let var = (sumsq / n as f64 - mean * mean) / n as f64;
    let sigma = var.sqrt();
    assert!(
        (got - mean).abs() < 3.0 * sigma,
        "quadrature {got} vs MC {mean} +- {sigma}"
    );
}

// ---------------------------------------------------------------------------
// medial axis vs an inscribed-radius ridge oracle
// ---------------------------------------------------------------------------

/// Grid points where the two smallest edge distances are within `band` of
/// each other: a thickened sample of the medial axis.
fn ridge_band(p: &ConvexPolygon, nx: usize, ny: usize, band: f64) -> Vec<Point2> {
    let (lo, hi) = p.bounding_box();
    let mut out = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let pt = Point2::new(
                lo.x + (hi.x - lo.x) * (ix as f64 + 0.5) / nx as f64,
                lo.y + (hi.y - lo.y) * (iy as f64 + 0.5) / ny as f64,
            );
            if !p.contains(pt) {
                continue;
            }
            let mut dists: Vec<f64> = p
                .edge_iter()
                .map(|(a, b)| pt.distance_to_segment(a, b))
                .collect();
            dists.sort_by(f64::total_cmp);
            if dists[1] - dists[0] < band {
                out.push(pt);
            }
        }
    }
    out
}

#[test]
fn rectangle_skeleton_matches_the_ridge_oracle() {
    let rect = poly(&[(-1.0, -0.5), (1.0, -0.5), (1.0, 0.5), (-1.0, 0.5)]);
    let sk = medial_axis(&rect).unwrap();

    // band of half-width <= ~0.004 around the true ridge on a fine grid
    let band = ridge_band(&rect, 400, 200, 0.005);
    assert!(band.len() > 100, "oracle band unexpectedly sparse");
    let worst_to_skeleton = band.iter().map(|p| sk.distance_to(*p)).fold(0.0, f64::max);
    assert!(
        worst_to_skeleton < 1e-2,
        "ridge strays {worst_to_skeleton} from skeleton"
    );

    // and the skeleton is covered by the band (other Hausdorff direction)
    let mut worst_to_band = 0.0f64;
    for &(i, j) in &sk.edges {
        for step in 0..=50 {
            let t = step as f64 / 50.0;
            let p = sk.nodes[i] + (sk.nodes[j] - sk.nodes[i]) * t;
            let d = band
                .iter()
                .map(|q| q.distance(p))
                .fold(f64::INFINITY, f64::min);
            worst_to_band = worst_to_band.max(d);
        }
    }
    assert!(
        worst_to_band < 1e-2,
        "skeleton strays {worst_to_band} from ridge band"
    );
}

#[test]
fn exact_ties_on_a_200_grid_lie_on_the_skeleton() {
    // grid points whose two nearest edges tie within 1e-6 are genuinely on
    // the axis for these symmetric shapes; they must sit within 1e-2 of it
    for shape in [
        poly(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]),
        poly(&[(-1.0, -0.5), (1.0, -0.5), (1.0, 0.5), (-1.0, 0.5)]),
    ] {
        let sk = medial_axis(&shape).unwrap();
        let ties = ridge_band(&shape, 200, 200, 1e-6);
        for p in &ties {
            assert!(
                sk.distance_to(*p) < 1e-2,
                "tie point {p:?} off the skeleton"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// packing potential vs the polygon quadrature oracle
// ---------------------------------------------------------------------------

#[test]
fn packing_potential_error_decreases_with_depth() {
    let kernel = Kernel::new(2);
    let square = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    let body = BodyMeasure::solid(Body::Polygon(square.clone()));
    let x = Point::d2(2.0, 0.0);
    let truth = potential_body_quadrature(&kernel, &body, &x).unwrap().value;

    let mut prev = f64::INFINITY;
    for depth in [2, 4, 6, 8] {
        let (m, _) = ball_packing(&square, depth);
        let got = potential_atomic(&kernel, &m, &x).unwrap().value;
        let err = (got - truth).abs() / truth.abs();
        assert!(
            err < prev * 1.05 + 1e-15,
            "error grew at depth {depth}: {prev} -> {err}"
        );
        prev = err;
    }
    assert!(prev < 0.06, "depth-8 packing error {prev}");
}

// ---------------------------------------------------------------------------
// error estimates vs closed forms on random cases
// ---------------------------------------------------------------------------

#[test]
fn quadrature_error_estimates_bound_true_error_on_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = 200;
    let mut bounded = 0;
    for _ in 0..trials {
        let radius = 0.5 + 1.5 * rng.random::<f64>();
        let r = radius * (1.3 + 3.0 * rng.random::<f64>());
        let kind = rng.random_range(0..3u8);
        let (sample, exact) = match kind {
            0 => {
                // 2D disk vs its centered point mass
                let kernel = Kernel::new(2);
                let body = BodyMeasure::solid(Body::Disk { radius });
                let s = potential_body_quadrature(&kernel, &body, &Point::d2(r, 0.0)).unwrap();
                let exact = -(PI * radius * radius) / (2.0 * PI) * r.ln();
                (s, exact)
            }
            1 => {
                // spherical shell vs kappa q / r with eps0 = 1
                let kernel = Kernel::new(3);
                let body = BodyMeasure::shell(
                    Body::Symmetric(SymmetricBody3D::SphereShell { radius }),
                    1.0,
                );
                let s = potential_body_quadrature(&kernel, &body, &Point::d3(0.0, 0.0, r)).unwrap();
                let exact =
                    shell_potential_closed(radius, 1.0, r, &ElectroConstants::from_eps0(1.0))
                        .unwrap();
                (s, exact)
            }
            _ => {
                // solid ball vs point of equal mass
                let kernel = Kernel::new(3);
                let body =
                    BodyMeasure::solid(Body::Symmetric(SymmetricBody3D::SolidBall { radius }));
                let s = potential_body_quadrature(&kernel, &body, &Point::d3(r, 0.0, 0.0)).unwrap();
                let exact = (4.0 / 3.0 * PI * radius.powi(3)) / (4.0 * PI * r);
                (s, exact)
            }
        };
        let true_err = (sample.value - exact).abs();
        if true_err <= sample.estimated_error + 1e-13 * (1.0 + exact.abs()) {
            bounded += 1;
        }
    }
    assert!(
        bounded * 100 >= trials * 95,
        "error estimate bounded the true error in only {bounded}/{trials} trials"
    );
}
