//! The five mother-body axioms, checked numerically: exterior match,
//! domination, nonnegativity, null support, and connectivity. A centered
//! point passes for the disk; an off-center one gets caught.
//!
//! Run with: cargo run --example axiom_check

use motherbody::measure::{AtomicMeasure, BodyMeasure, Measure};
use motherbody::potential::Kernel;
use motherbody::verify::{verify_all, AxiomConfig};
use motherbody::{Body, Point};
use std::f64::consts::PI;

fn print_report(tag: &str, report: &motherbody::VerificationReport) {
    println!("{tag}:");
    for (name, r) in [
        ("exterior match ", &report.axiom1),
        ("domination     ", &report.axiom2),
        ("nonnegativity  ", &report.axiom3),
        ("null support   ", &report.axiom4),
        ("connectivity   ", &report.axiom5),
    ] {
        println!(
            "  {name} {}  worst residual {:.3e}",
            if r.pass { "pass" } else { "FAIL" },
            r.worst_residual
        );
    }
    println!(
        "  overall: {}",
        if report.overall { "pass" } else { "FAIL" }
    );
}

fn main() {
    let kernel = Kernel::new(2);
    let cfg = AxiomConfig::default();
    let disk = BodyMeasure::solid(Body::Disk { radius: 1.0 });

    let centered = Measure::Atomic(AtomicMeasure::point_mass(Point::d2(0.0, 0.0), PI));
    print_report(
        "disk vs centered point of equal mass",
        &verify_all(&disk, &centered, &cfg, &kernel).unwrap(),
    );

    println!();
    let off = Measure::Atomic(AtomicMeasure::point_mass(Point::d2(0.5, 0.0), PI));
    print_report(
        "disk vs off-center point (a non-mother)",
        &verify_all(&disk, &off, &cfg, &kernel).unwrap(),
    );
}
