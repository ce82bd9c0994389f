//! A finite-dimensional laboratory for consistent operator semigroups and
//! interpolation spaces.
//!
//! Everything lives on a discrete measure space with finitely many atoms, so
//! Banach spaces become coordinate spaces with computable norms, semigroups
//! become matrix exponentials `t ↦ exp(-tA)` and interpolation functors become
//! convex minimization problems. Each classical statement about consistency
//! of semigroups and interpolation of their generators then turns into a
//! measurable inequality with an explicit tolerance, reported through
//! [`report::CheckReport`].
//!
//! Module map:
//!
//! * [`spaces`] — discrete measures, weighted-Lp / Sobolev / dual / sum /
//!   intersection / graph norms, dual-norm and operator-norm estimation.
//! * [`interp`] — K-functionals, real `(θ,q)` interpolation, the weighted-ℓp
//!   complex interpolation closed form, operator interpolation bounds.
//! * [`semigroup`] — matrix semigroups `exp(-tA)`, resolvents, the backward
//!   Euler approximation and Laplace-transform quadrature.
//! * [`consistency`] — the theorem checks: operator/semigroup consistency,
//!   resolvent ⇔ semigroup equivalence, adjoint consistency, interpolation of
//!   semigroups, generators and resolvents.
//! * [`elliptic`] — discrete divergence-form operators with mixed boundary
//!   conditions, discrete Sobolev scales and Gaussian kernel-bound fitting.
//! * [`opt`] — the convex solvers behind the norms: a smoothed Newton method
//!   with certified duality gaps and a multi-start ratio-ascent maximizer.

pub mod consistency;
pub mod elliptic;
pub mod interp;
pub mod linalg;
pub mod opt;
pub mod report;
pub mod semigroup;
pub mod spaces;

pub use consistency::{CheckError, ConsistentPair};
pub use interp::{FunctorDescriptor, KFunctionalResult};
pub use report::{CheckReport, Verdict};
pub use semigroup::{GeneratorRealization, SemigroupTrajectory};
pub use spaces::{
    DiscreteMeasureSpace, EvalContext, Exponent, InterpolationCouple, NormedSpace, SpaceError,
};
