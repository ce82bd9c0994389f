//! Multi-start ascent for homogeneous quotients `num(x) / den(x)`.
//!
//! Dual norms (`num` linear, `den` a norm) and operator norms (`num` a norm
//! of `Tx`) both fit this shape. Every evaluated point yields a certified
//! lower bound, so the engine reports the best value seen together with a
//! convergence flag. Iterates are renormalized to the Euclidean sphere each
//! step — the quotient is 0-homogeneous, and staying on the sphere keeps
//! step sizes meaningful. Steps use Barzilai–Borwein lengths with a
//! backtracking fallback; stalls at nonsmooth points trigger a seeded
//! perturbation before giving up on a start.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct AscentOptions {
    pub restarts: usize,
    pub max_iters: usize,
    /// Relative improvement below which a start counts as converged.
    pub rel_tol: f64,
    /// Iterations the improvement must stay below `rel_tol` before stopping.
    pub patience: usize,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions { restarts: 32, max_iters: 600, rel_tol: 1e-14, patience: 12 }
    }
}

#[derive(Debug, Clone)]
pub struct AscentResult {
    pub value: f64,
    pub maximizer: DVector<f64>,
    pub converged: bool,
    pub iterations: usize,
}

/// One differentiable piece of the quotient: value and coordinate gradient.
pub type Piece<'a> = dyn Fn(&DVector<f64>) -> (f64, DVector<f64>) + 'a;

/// Maximize `num(x)/den(x)` over `x ≠ 0`.
///
/// `hints` seed the start list (they are used before random starts); both
/// signs of every start are tried since the quotient is odd under `x ↦ -x`
/// when `num` is linear.
pub fn maximize_quotient(
    dim: usize,
    num: &Piece,
    den: &Piece,
    hints: &[DVector<f64>],
    seed: u64,
    opts: &AscentOptions,
) -> AscentResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts: Vec<DVector<f64>> = Vec::new();
    for h in hints {
        if h.norm() > 0.0 {
            starts.push(h.normalize());
            starts.push(-h.normalize());
        }
    }
    while starts.len() < opts.restarts.max(2) {
        let v = DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0));
        if v.norm() > 1e-12 {
            starts.push(v.normalize());
        }
    }

    let mut best_value = f64::NEG_INFINITY;
    let mut best_x = DVector::zeros(dim);
    let mut any_converged = false;
    let mut total_iters = 0usize;

    for start in starts {
        let (value, x, converged, iters) = ascend_one(&start, num, den, &mut rng, opts);
        total_iters += iters;
        if value > best_value {
            best_value = value;
            best_x = x;
        }
        any_converged |= converged;
    }

    AscentResult {
        value: best_value,
        maximizer: best_x,
        converged: any_converged,
        iterations: total_iters,
    }
}

fn quotient(num: &Piece, den: &Piece, x: &DVector<f64>) -> Option<(f64, DVector<f64>)> {
    let (nv, ng) = num(x);
    let (dv, dg) = den(x);
    if dv <= 0.0 || !dv.is_finite() || !nv.is_finite() {
        return None;
    }
    let q = nv / dv;
    // ∇(num/den) = (∇num·den − num·∇den)/den².
    let grad = (ng * dv - dg * nv) / (dv * dv);
    Some((q, grad))
}

fn ascend_one(
    start: &DVector<f64>,
    num: &Piece,
    den: &Piece,
    rng: &mut ChaCha8Rng,
    opts: &AscentOptions,
) -> (f64, DVector<f64>, bool, usize) {
    let mut x = start.clone();
    let Some((mut q, mut g)) = quotient(num, den, &x) else {
        return (f64::NEG_INFINITY, x, false, 0);
    };
    let mut best_q = q;
    let mut best_x = x.clone();
    let mut prev_x: Option<DVector<f64>> = None;
    let mut prev_g: Option<DVector<f64>> = None;
    let mut flat_streak = 0usize;
    let mut perturbations_left = 3usize;
    let mut iters = 0usize;

    while iters < opts.max_iters {
        iters += 1;
        let gnorm = g.norm();
        if gnorm < 1e-300 {
            break;
        }
        // Barzilai–Borwein step length, clamped; fall back to a unit-scale step.
        let mut step = match (&prev_x, &prev_g) {
            (Some(px), Some(pg)) => {
                let s = &x - px;
                let yv = &g - pg;
                let sy = s.dot(&yv).abs();
                if sy > 1e-300 {
                    (s.dot(&s) / sy).clamp(1e-8, 1e4)
                } else {
                    1.0 / gnorm
                }
            }
            _ => 0.1 / gnorm.max(1e-12),
        };
        prev_x = Some(x.clone());
        prev_g = Some(g.clone());

        let mut improved = false;
        for _ in 0..40 {
            let mut trial = &x + &g * step;
            let tn = trial.norm();
            if tn > 1e-300 {
                trial /= tn;
                if let Some((tq, tg)) = quotient(num, den, &trial) {
                    if tq > q {
                        let gain = tq - q;
                        x = trial;
                        q = tq;
                        g = tg;
                        improved = true;
                        if q > best_q {
                            best_q = q;
                            best_x = x.clone();
                        }
                        flat_streak = if gain <= opts.rel_tol * (1.0 + q.abs()) {
                            flat_streak + 1
                        } else {
                            0
                        };
                        break;
                    }
                }
            }
            step *= 0.5;
        }

        if !improved {
            // Stalled: either a kink or the maximum. Perturb a couple of
            // times before accepting.
            if perturbations_left > 0 {
                perturbations_left -= 1;
                let noise = DVector::from_fn(x.len(), |_, _| rng.random_range(-1.0..1.0));
                x = (&x + noise * 1e-4).normalize();
                match quotient(num, den, &x) {
                    Some((nq, ng2)) => {
                        q = nq;
                        g = ng2;
                        prev_x = None;
                        prev_g = None;
                    }
                    None => break,
                }
            } else {
                return (best_q, best_x, true, iters);
            }
        } else if flat_streak >= opts.patience {
            return (best_q, best_x, true, iters);
        }
    }
    (best_q, best_x, false, iters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_dual_norm_is_vector_norm() {
        // sup ⟨c,x⟩/‖x‖₂ = ‖c‖₂.
        let c = DVector::from_row_slice(&[3.0, -4.0, 12.0]);
        let c2 = c.clone();
        let num = move |x: &DVector<f64>| (c2.dot(x), c2.clone());
        let den = |x: &DVector<f64>| {
            let n = x.norm();
            (n, x / n)
        };
        let r = maximize_quotient(3, &num, &den, &[], 7, &AscentOptions::default());
        assert!((r.value - 13.0).abs() < 1e-10, "value {}", r.value);
        assert!(r.converged);
    }

    #[test]
    fn linf_dual_is_l1() {
        // sup ⟨c,x⟩/‖x‖_∞ = ‖c‖₁, with a kinky denominator.
        let c = DVector::from_row_slice(&[1.0, -2.0, 0.5]);
        let c2 = c.clone();
        let num = move |x: &DVector<f64>| (c2.dot(x), c2.clone());
        let den = |x: &DVector<f64>| {
            let mut idx = 0;
            for i in 0..x.len() {
                if x[i].abs() > x[idx].abs() {
                    idx = i;
                }
            }
            let mut g = DVector::zeros(x.len());
            g[idx] = x[idx].signum();
            (x[idx].abs(), g)
        };
        let r = maximize_quotient(3, &num, &den, &[], 11, &AscentOptions::default());
        assert!((r.value - 3.5).abs() < 1e-9, "value {}", r.value);
    }
}
