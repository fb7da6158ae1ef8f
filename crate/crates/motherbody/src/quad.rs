//! Gauss-Legendre panels with adaptive bisection.
//!
//! One rule is shared everywhere: order-16 Gauss-Legendre per panel,
//! bisect until two refinement levels agree, report the last inter-level
//! difference as the error estimate.

use std::sync::OnceLock;

/// Default panel order used by the potential evaluators.
pub const DEFAULT_ORDER: usize = 16;

const MAX_DEPTH: usize = 42;

/// Legendre P_n(x) and its derivative, by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Computed by Newton iteration on P_n from the Chebyshev initial guess;
/// converges to machine precision in a handful of steps.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "rule order must be at least 2");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn rule16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(DEFAULT_ORDER))
}

/// Single order-16 panel of f over [a, b].
pub fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = rule16();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = CompensatedSum::new();
    for (t, w) in nodes.iter().zip(weights) {
        acc.add(w * f(c + h * t));
    }
    h * acc.total()
}

fn panel_abs<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = rule16();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for (t, w) in nodes.iter().zip(weights) {
        acc += w * f(c + h * t).abs();
    }
    h * acc
}

/// Adaptive integral of f over [a, b] to the given relative tolerance.
///
/// Returns the value and the accumulated last inter-level difference.
/// The relative tolerance is taken against the L1 mass of the integrand so
/// that integrands crossing zero do not force runaway refinement.
pub fn integrate<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let whole = panel(f, a, b);
    let scale = panel_abs(f, a, b).max(whole.abs()).max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale;
    bisect(f, a, b, whole, tol, 0)
}

fn bisect<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid);
    let right = panel(f, mid, b);
    let refined = left + right;
    let diff = (refined - whole).abs();
    if diff <= tol || depth >= MAX_DEPTH {
        return (refined, diff);
    }
    let (lv, le) = bisect(f, a, mid, left, 0.5 * tol, depth + 1);
    let (rv, re) = bisect(f, mid, b, right, 0.5 * tol, depth + 1);
    (lv + rv, le + re)
}

/// Neumaier compensated accumulator; keeps long sums deterministic and tight.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rule_integrates_high_degree_polynomials_exactly() {
        // 16 points are exact through degree 31
        let mut f = |x: f64| x.powi(31) + 3.0 * x.powi(30) + x;
        let got = panel(&mut f, -1.0, 1.0);
        let exact = 2.0 * 3.0 / 31.0;
        assert_abs_diff_eq!(got, exact, epsilon = 1e-13);
    }

    #[test]
    fn rule_weights_sum_to_interval_length() {
        for n in [2, 8, 16, 24, 64] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert_abs_diff_eq!(s, 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn adaptive_handles_integrable_log_endpoint() {
        // int_0^1 ln x dx = -1
        let (v, e) = integrate(&mut |x: f64| x.ln(), 1e-300, 1.0, 1e-10);
        assert!((v + 1.0).abs() < 1e-8, "value {v} err {e}");
    }

    #[test]
    fn adaptive_error_estimate_bounds_true_error_on_smooth_case() {
        let (v, e) = integrate(&mut |x: f64| (3.0 * x).sin(), 0.0, 2.0, 1e-12);
        let exact = (1.0 - (6.0f64).cos()) / 3.0;
        assert!((v - exact).abs() <= e + 1e-14);
    }

    #[test]
    fn compensated_sum_beats_naive_on_cancellation() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-17);
        }
        acc.add(-1.0);
        // a naive sum loses the 1e-17 contributions entirely and returns 0
        assert_abs_diff_eq!(acc.total(), 1e-13, epsilon = 1e-16);
    }
}
