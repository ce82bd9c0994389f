//! Convex solvers behind the norm evaluations.
//!
//! Two engines cover everything the laboratory needs:
//!
//! * [`newton`] — minimizes `Σ_k scale_k ‖B_k y + e_k‖_{p_k, w_k}` by damped
//!   Newton steps on a smoothed surrogate with continuation in the smoothing
//!   parameter. The smoothed gradients of each term are dual-feasible by
//!   construction, which yields a rigorous duality gap at every iterate.
//!   This is the K-functional / sum-norm solver.
//! * [`ascent`] — maximizes quotients `num(x)/den(x)` (dual norms, operator
//!   norms) by multi-start projected ascent with Barzilai–Borwein steps.
//!   Values are certified lower bounds: every iterate is feasible.

pub mod ascent;
pub mod newton;
pub mod smooth;
