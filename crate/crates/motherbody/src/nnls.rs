//! Nonnegative least squares by an active-set method on the normal
//! equations.
//!
//! Solves min ||A c - y||^2 + lambda ||c||^2 subject to c >= 0, optionally
//! with one linear equality constraint m'c = M (enforced by a Lagrange
//! multiplier on the free subsystem). Starts with every coefficient free,
//! moves negative coefficients to the active (zero) set, and re-solves the
//! free subsystem with a Cholesky factorization until the KKT conditions
//! hold: free gradients vanish, active gradients are nonnegative within
//! tolerance.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NnlsError {
    #[error("free subsystem is singular beyond tolerance")]
    RankDeficient,
    #[error("active-set iteration cap reached without satisfying KKT")]
    NoConvergence,
    #[error("matrix/vector shapes disagree")]
    BadShape,
}

/// Dense row-major matrix, just enough for this solver and its callers.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn transpose_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * v[r];
            }
        }
        out
    }

    /// Gram matrix A'A.
    pub fn gram(&self) -> Matrix {
        let mut g = Matrix::zeros(self.cols, self.cols);
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for i in 0..self.cols {
                let ri = row[i];
                if ri == 0.0 {
                    continue;
                }
                for j in i..self.cols {
                    g.data[i * self.cols + j] += ri * row[j];
                }
            }
        }
        for i in 0..self.cols {
            for j in 0..i {
                g.data[i * self.cols + j] = g.data[j * self.cols + i];
            }
        }
        g
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

/// Cholesky factor of a symmetric positive definite matrix.
struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    fn factor(g: &[f64], n: usize) -> Result<Self, NnlsError> {
        let mut l = vec![0.0; n * n];
        let scale = (0..n)
            .map(|i| g[i * n + i].abs())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for i in 0..n {
            for j in 0..=i {
                let mut s = g[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 1e-14 * scale {
                        return Err(NnlsError::RankDeficient);
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Ok(Self { n, l })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut z = vec![0.0; n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[i * n + k] * z[k];
            }
            z[i] = s / self.l[i * n + i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = z[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        x
    }
}

#[derive(Debug, Clone)]
pub struct NnlsOptions {
    /// Tikhonov term added to the normal-equation diagonal (absolute).
    pub regularization: f64,
    /// Optional equality constraint (weights, target): weights'c = target.
    pub equality: Option<(Vec<f64>, f64)>,
    /// Iteration cap; 0 means 100 * cols.
    pub max_iterations: usize,
    /// Active gradients may dip this far below zero and still pass KKT.
    pub kkt_tolerance: f64,
}

impl Default for NnlsOptions {
    fn default() -> Self {
        Self {
            regularization: 0.0,
            equality: None,
            max_iterations: 0,
            kkt_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NnlsSolution {
    pub coefficients: Vec<f64>,
    pub iterations: usize,
    /// ||A c - y||_2 at the solution
    pub residual_norm: f64,
}

pub fn solve(a: &Matrix, y: &[f64], opts: &NnlsOptions) -> Result<NnlsSolution, NnlsError> {
    if y.len() != a.rows() || a.cols() == 0 {
        return Err(NnlsError::BadShape);
    }
    if let Some((m, _)) = &opts.equality {
        if m.len() != a.cols() {
            return Err(NnlsError::BadShape);
        }
    }
    let cols = a.cols();
    let g0 = a.gram();
    let b0 = a.transpose_mul_vec(y);
    let lam = opts.regularization.max(0.0);
    let max_iter = if opts.max_iterations == 0 {
        100 * cols
    } else {
        opts.max_iterations
    };

    let mut free = vec![true; cols];
    let mut c_full = vec![0.0; cols];

    for iter in 1..=max_iter {
        let f_idx: Vec<usize> = (0..cols).filter(|&j| free[j]).collect();
        let mut nu = 0.0;
        if f_idx.is_empty() {
            if opts.equality.is_some() {
                // no free coefficient left to carry the equality constraint
                return Err(NnlsError::RankDeficient);
            }
            c_full.iter_mut().for_each(|c| *c = 0.0);
        } else {
            let nf = f_idx.len();
            let mut g = vec![0.0; nf * nf];
            for (i, &fi) in f_idx.iter().enumerate() {
                for (j, &fj) in f_idx.iter().enumerate() {
                    g[i * nf + j] = g0.get(fi, fj) + if i == j { lam } else { 0.0 };
                }
            }
            let chol = Cholesky::factor(&g, nf)?;
            let bf: Vec<f64> = f_idx.iter().map(|&j| b0[j]).collect();
            let mut cf = chol.solve(&bf);
            let mut w = Vec::new();
            let mut mw = 0.0;
            if let Some((m, target)) = &opts.equality {
                let mf: Vec<f64> = f_idx.iter().map(|&j| m[j]).collect();
                w = chol.solve(&mf);
                mw = mf.iter().zip(&w).map(|(a, b)| a * b).sum();
                if mw.abs() <= 1e-300 {
                    return Err(NnlsError::RankDeficient);
                }
                let mc: f64 = mf.iter().zip(&cf).map(|(a, b)| a * b).sum();
                nu = (mc - target) / mw;
                for (ci, wi) in cf.iter_mut().zip(&w) {
                    *ci -= nu * wi;
                }
            }

            // two rounds of iterative refinement on the (bordered) normal
            // system; the conditioning here is what limits coefficient
            // accuracy, and one to two corrections recover it
            for _ in 0..2 {
                let mut r1 = vec![0.0; nf];
                for (i, &fi) in f_idx.iter().enumerate() {
                    let mut gc = 0.0;
                    for (j, &fj) in f_idx.iter().enumerate() {
                        gc += (g0.get(fi, fj) + if i == j { lam } else { 0.0 }) * cf[j];
                    }
                    let me = opts.equality.as_ref().map_or(0.0, |(m, _)| m[fi]);
                    r1[i] = b0[fi] - gc - nu * me;
                }
                let mut dc = chol.solve(&r1);
                if let Some((m, target)) = &opts.equality {
                    let mf: Vec<f64> = f_idx.iter().map(|&j| m[j]).collect();
                    let mc: f64 = mf.iter().zip(&cf).map(|(a, b)| a * b).sum();
                    let r2 = target - mc;
                    let mdc: f64 = mf.iter().zip(&dc).map(|(a, b)| a * b).sum();
                    let dnu = (mdc - r2) / mw;
                    for (d, wi) in dc.iter_mut().zip(&w) {
                        *d -= dnu * wi;
                    }
                    nu += dnu;
                }
                for (ci, di) in cf.iter_mut().zip(&dc) {
                    *ci += di;
                }
            }

            // move negative coefficients to the active set
            let negatives: Vec<usize> = f_idx
                .iter()
                .enumerate()
                .filter(|&(i, _)| cf[i] < 0.0)
                .map(|(_, &j)| j)
                .collect();
            if !negatives.is_empty() {
                for j in negatives {
                    free[j] = false;
                }
                continue;
            }
            c_full.iter_mut().for_each(|c| *c = 0.0);
            for (i, &fi) in f_idx.iter().enumerate() {
                c_full[fi] = cf[i];
            }
        }

        // KKT check on the active set: gradient of the regularized objective
        // plus the constraint term must be nonnegative there
        let mut worst = 0.0;
        let mut worst_j = None;
        for j in 0..cols {
            if free[j] {
                continue;
            }
            let mut grad = -b0[j] + lam * c_full[j];
            for (k, &ck) in c_full.iter().enumerate() {
                if ck != 0.0 {
                    grad += g0.get(j, k) * ck;
                }
            }
            if let Some((m, _)) = &opts.equality {
                grad += nu * m[j];
            }
            if grad < worst {
                worst = grad;
                worst_j = Some(j);
            }
        }
        if let Some(j) = worst_j {
            if worst < -opts.kkt_tolerance {
                free[j] = true;
                continue;
            }
        }

        let resid = a.mul_vec(&c_full);
        let residual_norm = resid
            .iter()
            .zip(y)
            .map(|(r, yi)| (r - yi) * (r - yi))
            .sum::<f64>()
            .sqrt();
        return Ok(NnlsSolution {
            coefficients: c_full,
            iterations: iter,
            residual_norm,
        });
    }
    Err(NnlsError::NoConvergence)
}
