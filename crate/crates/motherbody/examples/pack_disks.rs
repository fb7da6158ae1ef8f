//! Approximating a polygon's volume measure by point masses at the centers
//! of disjoint inscribed disks, quadtree-style. Deeper trees cover more
//! area; the exterior potential error tracks the uncovered mass, and
//! rescaling the packing to the body's mass removes almost all of it.
//!
//! Run with: cargo run --example pack_disks

use motherbody::geometry::{ConvexPolygon, Point2};
use motherbody::measure::BodyMeasure;
use motherbody::packing::ball_packing;
use motherbody::potential::{potential_atomic, potential_body_quadrature, Kernel};
use motherbody::{Body, Point};

fn main() {
    let square = ConvexPolygon::new(vec![
        Point2::new(-1.0, -1.0),
        Point2::new(1.0, -1.0),
        Point2::new(1.0, 1.0),
        Point2::new(-1.0, 1.0),
    ])
    .unwrap();
    let area = square.area();
    let kernel = Kernel::new(2);
    let body = BodyMeasure::solid(Body::Polygon(square.clone()));
    let x = Point::d2(2.0 * square.circumradius(), 0.0);
    let truth = potential_body_quadrature(&kernel, &body, &x).unwrap().value;

    println!("square (+-1)^2, area {area}, evaluation at 2x circumradius");
    println!(
        "{:>6} {:>8} {:>12} {:>12} {:>12} {:>14}",
        "depth", "disks", "residual", "covered %", "rel err", "rel err scaled"
    );
    for depth in 1..=8 {
        let (m, residual) = ball_packing(&square, depth);
        let u = potential_atomic(&kernel, &m, &x).unwrap().value;
        let err = (u - truth).abs() / truth.abs();
        let scaled_err = match m.scale_to_mass(area) {
            Ok(scaled) => {
                let us = potential_atomic(&kernel, &scaled, &x).unwrap().value;
                (us - truth).abs() / truth.abs()
            }
            Err(_) => f64::NAN,
        };
        println!(
            "{depth:>6} {:>8} {residual:>12.6} {:>12.2} {err:>12.3e} {scaled_err:>14.3e}",
            m.atoms.len(),
            100.0 * (area - residual) / area
        );
    }
}
