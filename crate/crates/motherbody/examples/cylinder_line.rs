//! An infinite uniformly charged cylinder and a line charge carrying the
//! same charge per unit length (lambda = pi R^2 rho) have identical
//! potentials outside the cylinder; the two closed forms agree to the last
//! bit. The same fact in its exact 2D form: a uniform disk's exterior
//! potential equals that of a point of equal mass at its center.
//!
//! Run with: cargo run --example cylinder_line

use motherbody::measure::{AtomicMeasure, BodyMeasure};
use motherbody::potential::{
    cylinder_potential_closed, line_potential_closed, potential_atomic, potential_body_quadrature,
    Kernel,
};
use motherbody::{Body, Point};
use std::f64::consts::PI;

fn main() {
    let (radius, rho, ref_a, eps0) = (1.0, 1.0, 2.0, 1.0);
    let lambda = PI * radius * radius * rho;

    println!("cylinder R={radius}, rho={rho}, reference a={ref_a}, eps0={eps0}");
    println!("line density lambda = pi R^2 rho = {lambda:.6}");
    println!(
        "{:>6} {:>16} {:>16} {:>12}",
        "r", "V_cylinder", "V_line", "difference"
    );
    for r in [2.5, 3.0, 4.0, 6.0, 10.0] {
        let vc = cylinder_potential_closed(radius, rho, r, ref_a, eps0).unwrap();
        let vl = line_potential_closed(lambda, r, ref_a, eps0).unwrap();
        println!("{r:>6.2} {vc:>16.12} {vl:>16.12} {:>12.3e}", vc - vl);
    }

    println!();
    println!("2D reduction: uniform disk vs center point mass (pure log potential)");
    let kernel = Kernel::new(2);
    let disk = BodyMeasure::solid(Body::Disk { radius });
    let point = AtomicMeasure::point_mass(Point::d2(0.0, 0.0), PI * radius * radius * rho);
    println!(
        "{:>6} {:>16} {:>16} {:>12}",
        "r", "U_disk (quad)", "U_point", "difference"
    );
    for r in [1.5, 2.0, 3.0, 5.0] {
        let ud = potential_body_quadrature(&kernel, &disk, &Point::d2(r, 0.0))
            .unwrap()
            .value;
        let up = potential_atomic(&kernel, &point, &Point::d2(r, 0.0))
            .unwrap()
            .value;
        println!("{r:>6.2} {ud:>16.12} {up:>16.12} {:>12.3e}", ud - up);
    }
}
