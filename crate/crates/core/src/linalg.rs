//! Small dense linear-algebra helpers shared across modules.
//!
//! Factorizations themselves come from `nalgebra`; this module adds the
//! glue the checks need: condition estimates, spectral-norm bounds and
//! Gauss–Legendre rules.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: matrix is {rows}x{cols}, vector has length {len}")]
    DimensionMismatch { rows: usize, cols: usize, len: usize },
    #[error("linear system is singular or too ill-conditioned (condition estimate {cond:.3e})")]
    IllConditioned { cond: f64 },
}

/// Largest singular value, computed exactly through the SVD.
pub fn spectral_norm(a: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    a.clone().singular_values()[0]
}

/// Cheap upper bound for the spectral norm: `sqrt(norm_1 * norm_inf)`.
pub fn spectral_norm_upper(a: &DMatrix<f64>) -> f64 {
    (one_norm(a) * inf_norm(a)).sqrt()
}

/// Maximum absolute column sum.
pub fn one_norm(a: &DMatrix<f64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Maximum absolute row sum.
pub fn inf_norm(a: &DMatrix<f64>) -> f64 {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Two-norm condition estimate via singular values.
pub fn condition_estimate(a: &DMatrix<f64>) -> f64 {
    let sv = a.clone().singular_values();
    let smax = sv[0];
    let smin = sv[sv.len() - 1];
    if smin <= 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Solve `A y = b` by pivoted LU with a condition guard and one step of
/// iterative refinement. Fails when the condition estimate exceeds `cond_cap`.
pub fn solve_conditioned(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    cond_cap: f64,
) -> Result<DVector<f64>, LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    if a.nrows() != b.len() {
        return Err(LinalgError::DimensionMismatch {
            rows: a.nrows(),
            cols: a.ncols(),
            len: b.len(),
        });
    }
    let lu = a.clone().lu();
    let mut y = lu.solve(b).ok_or_else(|| LinalgError::IllConditioned {
        cond: condition_estimate(a),
    })?;
    // One refinement step keeps residuals near machine precision even when
    // the factorization loses a few digits.
    let r = b - a * &y;
    if let Some(dy) = lu.solve(&r) {
        y += dy;
    }
    let residual = (b - a * &y).norm();
    if residual > 1e-10 * b.norm().max(1.0) {
        let cond = condition_estimate(a);
        if cond > cond_cap {
            return Err(LinalgError::IllConditioned { cond });
        }
    }
    Ok(y)
}

/// A reusable LU factorization for repeated solves against one matrix.
pub struct Factorized {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    dim: usize,
}

impl Factorized {
    pub fn new(a: &DMatrix<f64>) -> Result<Self, LinalgError> {
        if a.nrows() != a.ncols() {
            return Err(LinalgError::NotSquare { rows: a.nrows(), cols: a.ncols() });
        }
        Ok(Self { lu: a.clone().lu(), dim: a.nrows() })
    }

    pub fn solve(&self, b: &DVector<f64>) -> Result<DVector<f64>, LinalgError> {
        self.lu.solve(b).ok_or(LinalgError::IllConditioned { cond: f64::INFINITY })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
