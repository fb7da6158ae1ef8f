//! Medial axes of convex polygons by inward wavefront collapse: the square
//! collapses onto its diagonals, the rectangle grows a midline, and a
//! generic pentagon gets a proper tree.
//!
//! Run with: cargo run --example medial_axis

use motherbody::geometry::{medial_axis, ConvexPolygon, Point2};

fn show(name: &str, pts: &[(f64, f64)]) {
    let poly = ConvexPolygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap();
    let sk = medial_axis(&poly).unwrap();
    println!(
        "{name}: {} corners -> {} nodes, {} edges",
        poly.len(),
        sk.nodes.len(),
        sk.edges.len()
    );
    for &(i, j) in &sk.edges {
        let (a, b) = (sk.nodes[i], sk.nodes[j]);
        println!("  ({:+.4}, {:+.4}) -- ({:+.4}, {:+.4})", a.x, a.y, b.x, b.y);
    }
    println!("  as JSON: {}", serde_json::to_string(&sk).unwrap());
    println!();
}

fn main() {
    show(
        "square",
        &[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)],
    );
    show(
        "rectangle 2:1",
        &[(-1.0, -0.5), (1.0, -0.5), (1.0, 0.5), (-1.0, 0.5)],
    );
    show(
        "pentagon",
        &[(0.0, 0.0), (2.0, -0.3), (3.0, 1.0), (1.5, 2.4), (-0.5, 1.2)],
    );
}
