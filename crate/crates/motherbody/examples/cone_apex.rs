//! An open cone surface and its axis carrying the linear density
//! q_i = 2 pi R_i sigma produce the same potential at the apex — and only
//! there is the match exact: away from the apex the axis density does not
//! even carry the cone's total charge, so this example reports the
//! residual over exterior sample points instead of asserting it away.
//!
//! Run with: cargo run --example cone_apex

use motherbody::measure::BodyMeasure;
use motherbody::potential::{
    cone_apex_potential_closed, cone_axis_mother_potential, potential_atomic,
    potential_body_quadrature, Kernel,
};
use motherbody::skeleton::analytic_mother;
use motherbody::{Body, Point, SymmetricBody3D};
use std::f64::consts::PI;

fn main() {
    let (radius, height, sigma, eps0) = (1.0, 1.0, 1.0, 1.0);
    let cone = BodyMeasure::shell(
        Body::Symmetric(SymmetricBody3D::ConeSurface { radius, height }),
        sigma,
    );
    let axis = analytic_mother(&cone).expect("cone has an analytic axis mother");

    let v_cone = cone_apex_potential_closed(radius, height, sigma, eps0);
    let v_axis = cone_axis_mother_potential(radius, height, sigma, eps0);
    println!("cone R={radius}, h={height}, sigma={sigma}, eps0={eps0}");
    println!("apex potentials: cone surface {v_cone:.12}, axis density {v_axis:.12}");

    let kernel = Kernel::new(3);
    let quad = potential_body_quadrature(&kernel, &cone, &Point::d3(0.0, 0.0, 0.0))
        .unwrap()
        .value;
    println!("slant-ring quadrature at the apex: {quad:.12}");

    println!();
    println!(
        "total charges differ: surface {:.6} vs axis {:.6}",
        cone.total_mass(),
        axis.total_mass()
    );
    println!("so off the apex the residual is real and worth watching:");
    println!(
        "{:>8} {:>8} {:>14} {:>14} {:>12}",
        "rho", "z", "V_cone", "V_axis", "rel resid"
    );
    let rr = 2.0 * radius.hypot(height);
    for k in 0..=6 {
        let phi = PI * k as f64 / 6.0;
        let (rho, z) = (rr * phi.sin(), height / 2.0 + rr * phi.cos());
        let x = Point::d3(rho, 0.0, z);
        let vb = potential_body_quadrature(&kernel, &cone, &x).unwrap().value / eps0;
        let va = potential_atomic(&kernel, &axis, &x).unwrap().value / eps0;
        println!(
            "{rho:>8.4} {z:>8.4} {vb:>14.9} {va:>14.9} {:>12.3e}",
            (va - vb).abs() / vb.abs()
        );
    }
}
