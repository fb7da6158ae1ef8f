//! A uniformly charged spherical shell and its mother body (a point charge
//! of the same total charge at the center) produce identical exterior
//! potentials. Compares the closed form with the ring-decomposition
//! quadrature over a radius sweep.
//!
//! Run with: cargo run --example shell_point

use motherbody::measure::BodyMeasure;
use motherbody::potential::{
    potential_body_quadrature, shell_potential_closed, ElectroConstants, Kernel,
};
use motherbody::{Body, Point, SymmetricBody3D};

fn main() {
    let (radius, sigma) = (1.0, 1.0);
    let constants = ElectroConstants::from_eps0(1.0);
    let kernel = Kernel::new(3);
    let shell = BodyMeasure::shell(
        Body::Symmetric(SymmetricBody3D::SphereShell { radius }),
        sigma,
    );
    let q = 4.0 * std::f64::consts::PI * radius * radius * sigma;

    println!("spherical shell R={radius}, sigma={sigma}, eps0=1 (total charge q={q:.6})");
    println!(
        "{:>6} {:>16} {:>16} {:>12}",
        "r", "shell (quad)", "point kq/r", "difference"
    );
    for r in [1.5, 2.0, 4.0, 8.0, 16.0] {
        let quad = potential_body_quadrature(&kernel, &shell, &Point::d3(0.0, 0.0, r))
            .expect("exterior point")
            .value;
        let closed = shell_potential_closed(radius, sigma, r, &constants).unwrap();
        println!(
            "{r:>6.2} {quad:>16.12} {closed:>16.12} {:>12.3e}",
            quad - closed
        );
    }
    println!();
    println!("inside the shell the potential is constant (no field):");
    for r in [0.25, 0.5, 0.75] {
        let quad = potential_body_quadrature(&kernel, &shell, &Point::d3(r, 0.0, 0.0))
            .unwrap()
            .value;
        println!("  U({r:.2}) = {quad:.12}");
    }
}
