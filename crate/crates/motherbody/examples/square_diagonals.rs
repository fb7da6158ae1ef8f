//! The mother body of a uniform square plate lives on its diagonals, but
//! the charge density along them is anything but uniform. This fits the
//! density by nonnegative least squares against exterior collocation and
//! prints the profile from a corner to the center.
//!
//! Run with: cargo run --example square_diagonals

use motherbody::geometry::{ConvexPolygon, Point2};
use motherbody::measure::Atom;
use motherbody::potential::Kernel;
use motherbody::skeleton::{mother_of_polygon, FitConfig};

fn main() {
    let square = ConvexPolygon::new(vec![
        Point2::new(-1.0, -1.0),
        Point2::new(1.0, -1.0),
        Point2::new(1.0, 1.0),
        Point2::new(-1.0, 1.0),
    ])
    .unwrap();

    let cfg = FitConfig::default(); // K = 16, mass pinned to the area
    let kernel = Kernel::new(2);
    let (measure, report) = mother_of_polygon(&square, &cfg, &kernel).unwrap();

    println!(
        "square (+-1)^2, density fitted on the diagonals with K = {}",
        cfg.subdivisions
    );
    println!(
        "holdout relative residual {:.3e}, mass error {:+.3e}, {} solver iterations",
        report.holdout_relative, report.mass_error, report.iterations
    );
    println!("fitted total mass {:.9} (area is 4)", measure.total_mass());
    println!();

    // all four diagonal profiles coincide by symmetry; show the first
    if let Atom::Segment { p0, p1, lambda } = &measure.atoms[0] {
        let len = p0.distance(p1);
        let k = lambda.len() - 1;
        println!("density along one half-diagonal (corner at s=0, center at s={len:.4}):");
        println!("{:>10} {:>12}", "arclength", "density");
        for (i, l) in lambda.iter().enumerate() {
            println!("{:>10.4} {l:>12.6}", len * i as f64 / k as f64);
        }
        let mean = lambda.iter().sum::<f64>() / lambda.len() as f64;
        let stdev = (lambda.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / lambda.len() as f64)
            .sqrt();
        println!();
        println!("stdev/mean = {:.3}: visibly non-constant", stdev / mean);
    }
}
