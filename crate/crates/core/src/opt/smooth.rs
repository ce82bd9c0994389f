//! Smoothing calculus for weighted-Lp norm terms.
//!
//! Each `|s|` inside a norm is replaced by `φ_μ(s) = sqrt(s² + μ²)`, giving a
//! C² convex surrogate. The two facts the solver relies on:
//!
//! * `N(u) ≤ N_μ(u) ≤ N(u) + μ·N(1)` — the surrogate brackets the norm;
//! * the surrogate's gradient always lies in the *exact* dual unit ball,
//!   so smoothed gradients furnish rigorous dual certificates at any `μ`.
//!
//! For `p = ∞` the max is smoothed by log-sum-exp over the `φ_μ` values,
//! whose gradient lies in the ℓ¹ unit ball (the dual of the max norm).

use crate::spaces::Exponent;
use nalgebra::DVector;

/// Value, gradient and Hessian factors of one smoothed norm term at `u`.
pub struct TermDerivatives {
    /// Smoothed value (uns scaled by the term's `scale`).
    pub value: f64,
    /// Gradient of the smoothed term w.r.t. `u`; lies in the exact dual
    /// unit ball of the unsmoothed norm.
    pub grad: DVector<f64>,
    /// Diagonal part `d` of the Hessian: `H = diag(d) - rank1 · rank1ᵀ`.
    pub hess_diag: DVector<f64>,
    /// Rank-one downdate vector (already scaled by the coefficient's sqrt).
    pub hess_rank1: Option<DVector<f64>>,
}

/// Derivatives of `u ↦ smoothed ‖u‖_{p,w}` at `u` with smoothing `μ > 0`.
pub fn lp_term_derivatives(
    u: &DVector<f64>,
    p: Exponent,
    w: &DVector<f64>,
    mu: f64,
) -> TermDerivatives {
    let n = u.len();
    debug_assert!(mu > 0.0);
    if p.is_infinite() {
        return inf_term_derivatives(u, mu);
    }
    let pv = p.value();
    let phi: Vec<f64> = u.iter().map(|s| s.hypot(mu)).collect();
    let dphi: Vec<f64> = u.iter().zip(&phi).map(|(s, f)| s / f).collect();
    let ddphi: Vec<f64> = phi.iter().map(|f| mu * mu / (f * f * f)).collect();

    if pv == 1.0 {
        let value = w.iter().zip(&phi).map(|(wi, f)| wi * f).sum();
        let grad = DVector::from_iterator(n, w.iter().zip(&dphi).map(|(wi, d)| wi * d));
        let hess_diag = DVector::from_iterator(n, w.iter().zip(&ddphi).map(|(wi, d)| wi * d));
        return TermDerivatives { value, grad, hess_diag, hess_rank1: None };
    }

    // Scale by the peak φ so powers stay in range.
    let peak = phi.iter().cloned().fold(f64::MIN, f64::max);
    let m_scaled: f64 = w.iter().zip(&phi).map(|(wi, f)| wi * (f / peak).powf(pv)).sum();
    let value = peak * m_scaled.powf(1.0 / pv);
    // a_i = w_i φ^{p-1} φ' ; grad = m^{1/p-1} a (in scaled form).
    // With φ̂ = φ/peak: a_i = w φ̂^{p-1} φ' · peak^{p-1};
    // m = m_scaled · peak^p ⇒ m^{1/p-1} = m_scaled^{1/p-1} peak^{1-p}.
    let mfac = m_scaled.powf(1.0 / pv - 1.0);
    let mut grad = DVector::zeros(n);
    let mut hess_diag = DVector::zeros(n);
    let mut rank1 = DVector::zeros(n);
    // Hessian: m^{1/p-1} diag(w[(p-1)φ^{p-2}φ'² + φ^{p-1}φ'']) - (p-1) m^{1/p-2} a aᵀ
    // written with the same peak scaling (an overall factor 1/peak appears).
    let r1fac = ((pv - 1.0) * m_scaled.powf(1.0 / pv - 2.0) / peak).sqrt();
    for i in 0..n {
        let ph = phi[i] / peak;
        let a = w[i] * ph.powf(pv - 1.0) * dphi[i];
        grad[i] = mfac * a;
        let curv = w[i]
            * ((pv - 1.0) * ph.powf(pv - 2.0) * dphi[i] * dphi[i] / peak
                + ph.powf(pv - 1.0) * ddphi[i]);
        hess_diag[i] = mfac * curv;
        rank1[i] = r1fac * a;
    }
    TermDerivatives { value, grad, hess_diag, hess_rank1: Some(rank1) }
}

/// Smoothed max norm: log-sum-exp over `φ_μ(u_i)` at temperature `μ`.
fn inf_term_derivatives(u: &DVector<f64>, mu: f64) -> TermDerivatives {
    let n = u.len();
    let phi: Vec<f64> = u.iter().map(|s| s.hypot(mu)).collect();
    let dphi: Vec<f64> = u.iter().zip(&phi).map(|(s, f)| s / f).collect();
    let ddphi: Vec<f64> = phi.iter().map(|f| mu * mu / (f * f * f)).collect();
    let top = phi.iter().cloned().fold(f64::MIN, f64::max);
    let expv: Vec<f64> = phi.iter().map(|f| ((f - top) / mu).exp()).collect();
    let z: f64 = expv.iter().sum();
    let value = top + mu * z.ln();
    let sigma: Vec<f64> = expv.iter().map(|e| e / z).collect();
    let grad = DVector::from_iterator(n, sigma.iter().zip(&dphi).map(|(s, d)| s * d));
    // H = (diag(σ φ'²) - (σφ')(σφ')ᵀ)/μ + diag(σ φ'')
    let mut hess_diag = DVector::zeros(n);
    let mut rank1 = DVector::zeros(n);
    let r1fac = (1.0 / mu).sqrt();
    for i in 0..n {
        hess_diag[i] = sigma[i] * dphi[i] * dphi[i] / mu + sigma[i] * ddphi[i];
        rank1[i] = r1fac * sigma[i] * dphi[i];
    }
    TermDerivatives { value, grad, hess_diag, hess_rank1: Some(rank1) }
}

/// Upper bound for `N_μ(u) − N(u)`: `μ` times the norm of the all-ones
/// vector (`μ (Σ w)^{1/p}` for finite `p`, `μ·(1 + ln n)` slack for `∞`).
pub fn smoothing_overshoot(p: Exponent, w: &DVector<f64>, mu: f64) -> f64 {
    if p.is_infinite() {
        mu * (1.0 + (w.len().max(1) as f64).ln())
    } else {
        mu * w.sum().powf(1.0 / p.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::lp_norm;

    fn check_gradient(p: f64, u: &[f64], w: &[f64], mu: f64) {
        let p = Exponent::new(p).unwrap();
        let uv = DVector::from_row_slice(u);
        let wv = DVector::from_row_slice(w);
        let d = lp_term_derivatives(&uv, p, &wv, mu);
        let h = 1e-6;
        for i in 0..u.len() {
            let mut up = uv.clone();
            up[i] += h;
            let mut um = uv.clone();
            um[i] -= h;
            let fp = lp_term_derivatives(&up, p, &wv, mu).value;
            let fm = lp_term_derivatives(&um, p, &wv, mu).value;
            let fd = (fp - fm) / (2.0 * h);
            assert!(
                (fd - d.grad[i]).abs() < 1e-6 * (1.0 + fd.abs()),
                "p={:?} i={i}: fd={fd} analytic={}",
                p,
                d.grad[i]
            );
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let u = [0.7, -1.3, 0.0, 2.1];
        let w = [1.0, 0.5, 2.0, 1.5];
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            check_gradient(p, &u, &w, 1e-3);
        }
    }

    #[test]
    fn hessian_matches_finite_differences() {
        let u = DVector::from_row_slice(&[0.7, -1.3, 0.2]);
        let w = DVector::from_row_slice(&[1.0, 0.5, 2.0]);
        let mu = 1e-2;
        for p in [1.0, 1.5, 3.0, f64::INFINITY] {
            let p = Exponent::new(p).unwrap();
            let d0 = lp_term_derivatives(&u, p, &w, mu);
            let h = 1e-5;
            for i in 0..3 {
                let mut up = u.clone();
                up[i] += h;
                let mut um = u.clone();
                um[i] -= h;
                let gp = lp_term_derivatives(&up, p, &w, mu).grad;
                let gm = lp_term_derivatives(&um, p, &w, mu).grad;
                for j in 0..3 {
                    let fd = (gp[j] - gm[j]) / (2.0 * h);
                    let mut an = if i == j { d0.hess_diag[i] } else { 0.0 };
                    if let Some(r) = &d0.hess_rank1 {
                        an -= r[i] * r[j];
                    }
                    assert!(
                        (fd - an).abs() < 2e-4 * (1.0 + fd.abs()),
                        "p={p:?} ({i},{j}): fd={fd} analytic={an}"
                    );
                }
            }
        }
    }

    #[test]
    fn gradient_is_dual_feasible() {
        // ‖grad‖_{dual} ≤ 1 exactly, for several p and rough u.
        let u = DVector::from_row_slice(&[3.0, -0.1, 0.0, 7.5]);
        let w = DVector::from_row_slice(&[1.0, 2.0, 0.5, 1.0]);
        for p in [1.0, 1.5, 2.0, 4.0] {
            let pe = Exponent::new(p).unwrap();
            let d = lp_term_derivatives(&u, pe, &w, 1e-4);
            // Dual of ‖·‖_{p,w} under the coordinate pairing is the
            // unweighted q-norm of g_i w_i^{-1/p}.
            let q = pe.conjugate();
            let scaled =
                DVector::from_iterator(4, d.grad.iter().zip(w.iter()).map(|(g, wi)| g * wi.powf(-1.0 / p)));
            let dual = lp_norm(&scaled, q, &DVector::from_element(4, 1.0)).unwrap();
            assert!(dual <= 1.0 + 1e-12, "p={p}: dual norm of gradient = {dual}");
        }
        // p = ∞: gradient in the ℓ¹ ball.
        let d = lp_term_derivatives(&u, Exponent::infinity(), &w, 1e-4);
        let l1: f64 = d.grad.iter().map(|g| g.abs()).sum();
        assert!(l1 <= 1.0 + 1e-12);
    }

    #[test]
    fn smoothed_value_brackets_norm() {
        let u = DVector::from_row_slice(&[0.3, -2.0, 1.1]);
        let w = DVector::from_row_slice(&[1.0, 0.5, 2.0]);
        for p in [1.0, 1.7, 3.0] {
            let pe = Exponent::new(p).unwrap();
            let exact = lp_norm(&u, pe, &w).unwrap();
            for mu in [1e-1, 1e-4, 1e-8] {
                let v = lp_term_derivatives(&u, pe, &w, mu).value;
                assert!(v >= exact - 1e-13);
                assert!(v <= exact + smoothing_overshoot(pe, &w, mu) + 1e-13);
            }
        }
    }
}
