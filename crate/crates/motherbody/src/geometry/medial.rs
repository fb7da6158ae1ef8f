//! Medial axis of a convex polygon by inward wavefront collapse.
//!
//! All edges shrink inward at unit speed; vertices ride angular bisectors.
//! For strictly convex input the medial axis equals the straight skeleton,
//! so tracking edge-collapse events is enough: no split events can occur.
//! Simultaneous collapses (within 1e-12) are processed as one event with
//! coincident meet points merged, which keeps the square's four collapses
//! from spawning spurious zero-length edges.

use super::{ConvexPolygon, GeometryError, Point2};
use serde::{Deserialize, Serialize};

/// Straight-segment skeleton of a polygon: node positions plus index pairs.
///
/// Serialized form is `{"nodes": [[x,y],...], "edges": [[i,j],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub nodes: Vec<Point2>,
    pub edges: Vec<(usize, usize)>,
}

impl SkeletonGraph {
    pub fn total_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j)| self.nodes[i].distance(self.nodes[j]))
            .sum()
    }

    /// Distance from a point to the nearest skeleton segment.
    pub fn distance_to(&self, p: Point2) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j)| p.distance_to_segment(self.nodes[i], self.nodes[j]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Node indices of degree one.
    pub fn leaves(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.nodes.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        (0..self.nodes.len()).filter(|&i| deg[i] == 1).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, Copy)]
struct EdgeLine {
    /// inward unit normal
    normal: Point2,
    /// normal . x = offset on the resting edge line
    offset: f64,
    /// unit direction along the edge (CCW)
    dir: Point2,
}

#[derive(Debug, Clone, Copy)]
struct WaveVertex {
    /// polygon edge entering the vertex
    left: usize,
    /// polygon edge leaving the vertex
    right: usize,
    /// skeleton node where this vertex's trace started
    node: usize,
    flat: bool,
}

struct Builder {
    lines: Vec<EdgeLine>,
    nodes: Vec<Point2>,
    edges: Vec<(usize, usize)>,
    tie_tol: f64,
    merge_tol: f64,
}

impl Builder {
    /// Offset-line intersection of the vertex's two edges at time t.
    /// None when the edges are (near) parallel.
    fn position(&self, v: &WaveVertex, t: f64) -> Option<Point2> {
        let l = &self.lines[v.left];
        let r = &self.lines[v.right];
        let det = l.normal.cross(r.normal);
        if det.abs() <= 1e-12 {
            return None;
        }
        let cl = l.offset + t;
        let cr = r.offset + t;
        Some(Point2::new(
            (cl * r.normal.y - cr * l.normal.y) / det,
            (l.normal.x * cr - r.normal.x * cl) / det,
        ))
    }

    fn velocity(&self, v: &WaveVertex) -> Option<Point2> {
        let l = &self.lines[v.left];
        let r = &self.lines[v.right];
        let det = l.normal.cross(r.normal);
        if det.abs() <= 1e-12 {
            return None;
        }
        Some(Point2::new(
            (r.normal.y - l.normal.y) / det,
            (l.normal.x - r.normal.x) / det,
        ))
    }

    fn add_node(&mut self, p: Point2) -> usize {
        if let Some(i) = self
            .nodes
            .iter()
            .position(|q| q.distance(p) <= self.merge_tol)
        {
            return i;
        }
        self.nodes.push(p);
        self.nodes.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        if !self
            .edges
            .iter()
            .any(|&(i, j)| (i, j) == (a, b) || (i, j) == (b, a))
        {
            self.edges.push((a, b));
        }
    }
}

/// Medial axis (straight skeleton) of a convex polygon.
///
/// Every leaf of the returned tree is a polygon vertex, and the first
/// `poly.len()` nodes are the polygon corners in order.
pub fn medial_axis(poly: &ConvexPolygon) -> Result<SkeletonGraph, GeometryError> {
    let vs = poly.vertices();
    let n = vs.len();
    let scale = poly.circumradius().max(1.0);

    let lines: Vec<EdgeLine> = (0..n)
        .map(|i| {
            let a = vs[i];
            let b = vs[(i + 1) % n];
            let d = b - a;
            let len = d.norm();
            let dir = Point2::new(d.x / len, d.y / len);
            let normal = Point2::new(-dir.y, dir.x);
            EdgeLine {
                normal,
                offset: normal.dot(a),
                dir,
            }
        })
        .collect();

    let mut b = Builder {
        lines,
        nodes: vs.to_vec(),
        edges: Vec::new(),
        tie_tol: 1e-12 * scale,
        merge_tol: 1e-9 * scale,
    };

    // vertex i sits between edges i-1 and i
    let mut verts: Vec<WaveVertex> = (0..n)
        .map(|i| WaveVertex {
            left: (i + n - 1) % n,
            right: i,
            node: i,
            flat: false,
        })
        .collect();

    let mut t_now = 0.0f64;

    for _ in 0..(3 * n + 8) {
        let k = verts.len();
        if k <= 1 {
            return Ok(SkeletonGraph {
                nodes: b.nodes,
                edges: b.edges,
            });
        }
        if k == 2 {
            // remaining wavefront is a closing strip or a wedge bisector;
            // either way the union of the two traces is the segment between
            // the birth nodes
            let (na, nb) = (verts[0].node, verts[1].node);
            b.add_edge(na, nb);
            return Ok(SkeletonGraph {
                nodes: b.nodes,
                edges: b.edges,
            });
        }

        // collapse time of the wavefront edge between each adjacent pair
        let mut times = vec![f64::INFINITY; k];
        for p in 0..k {
            let u = &verts[p];
            let w = &verts[(p + 1) % k];
            let (pu, vu, pw, vw) = match (
                b.position(u, t_now),
                b.velocity(u),
                b.position(w, t_now),
                b.velocity(w),
            ) {
                (Some(a), Some(c), Some(d), Some(e)) => (a, c, d, e),
                _ => return Err(GeometryError::NumericCollapse),
            };
            let dir = b.lines[u.right].dir;
            let gap = dir.dot(pw - pu);
            let rate = dir.dot(vw - vu);
            if gap <= b.tie_tol {
                times[p] = t_now;
            } else if rate < 0.0 {
                times[p] = t_now + gap / (-rate);
            }
        }

        let tmin = times.iter().copied().fold(f64::INFINITY, f64::min);
        if !tmin.is_finite() {
            return Err(GeometryError::NumericCollapse);
        }
        let collapsing: Vec<bool> = times.iter().map(|&t| t <= tmin + b.tie_tol).collect();

        let anchor = match collapsing.iter().position(|&c| !c) {
            Some(a) => a,
            None => {
                // the whole remaining wavefront meets in one point
                let mut cx = 0.0;
                let mut cy = 0.0;
                for v in &verts {
                    let p = b.position(v, tmin).ok_or(GeometryError::NumericCollapse)?;
                    cx += p.x;
                    cy += p.y;
                }
                let meet = Point2::new(cx / k as f64, cy / k as f64);
                let node = b.add_node(meet);
                for v in &verts {
                    b.add_edge(v.node, node);
                }
                return Ok(SkeletonGraph {
                    nodes: b.nodes,
                    edges: b.edges,
                });
            }
        };

        // rebuild the cycle, replacing each maximal run of collapsing edges
        // by one merged vertex
        let mut next: Vec<WaveVertex> = Vec::with_capacity(k);
        let mut i = (anchor + 1) % k;
        let mut processed = 0;
        while processed < k {
            let rp = i; // right pair of vertex i
            if !collapsing[rp] {
                next.push(verts[i]);
                i = (i + 1) % k;
                processed += 1;
                continue;
            }
            // run of collapsing pairs starting at rp
            let mut run_len = 1;
            while collapsing[(rp + run_len) % k] {
                run_len += 1;
            }
            let dying: Vec<usize> = (0..=run_len).map(|d| (i + d) % k).collect();
            let left_edge = verts[i].left;
            let right_edge = verts[(i + run_len) % k].right;

            let probe = WaveVertex {
                left: left_edge,
                right: right_edge,
                node: 0,
                flat: false,
            };
            let (meet, flat) = match b.position(&probe, tmin) {
                Some(p) => (p, false),
                None => {
                    // bounding edges parallel: strip closed flat; the meet is
                    // the common point of the dying vertices
                    let mut cx = 0.0;
                    let mut cy = 0.0;
                    for &d in &dying {
                        let p = b
                            .position(&verts[d], tmin)
                            .ok_or(GeometryError::NumericCollapse)?;
                        cx += p.x;
                        cy += p.y;
                    }
                    (
                        Point2::new(cx / dying.len() as f64, cy / dying.len() as f64),
                        true,
                    )
                }
            };
            let node = b.add_node(meet);
            for &d in &dying {
                b.add_edge(verts[d].node, node);
            }
            next.push(WaveVertex {
                left: left_edge,
                right: right_edge,
                node,
                flat,
            });
            i = (i + run_len + 1) % k;
            processed += run_len + 1;
        }

        if next.len() > 2 && next.iter().any(|v| v.flat) {
            return Err(GeometryError::NumericCollapse);
        }
        verts = next;
        t_now = tmin;
    }

    Err(GeometryError::NumericCollapse)
}
