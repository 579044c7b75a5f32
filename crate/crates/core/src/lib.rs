//! Exact structural classification of the self-maps and rational maps whose
//! composition operators leave a finite-dimensional model space invariant,
//! together with a theorem-independent brute-force certifier.
//!
//! A finite Blaschke product `θ` determines the model space `Q_θ`, a
//! finite-dimensional space of rational functions spanned by Cauchy-type
//! kernels at the zeros of `θ`. This crate computes, for a given `θ`:
//!
//! * `D(Q_θ)` — all analytic self-maps `φ` of the unit disc with
//!   `C_φ Q_θ ⊆ Q_θ`, where `C_φ f = f ∘ φ`;
//! * `L(Q_θ)` — all rational maps of the Riemann sphere with the same
//!   invariance property.
//!
//! Both sets are returned as [`classifier::InvarianceFamily`] values: finite
//! groups are materialized, uncountable families are predicate-backed with a
//! decidable membership test. Every classification can be cross-checked by
//! the [`oracle`] module, which decides invariance by composing the explicit
//! kernel basis of `Q_θ` with `φ` and running a least-squares span test —
//! a route that never consults the classifier.

pub mod blaschke;
pub mod classifier;
pub mod numerics;
pub mod oracle;
pub mod symbols;

pub use blaschke::{FiniteBlaschkeProduct, Zero};
pub use classifier::{ConstantsPart, InvarianceFamily};
pub use numerics::ToleranceConfig;
pub use oracle::RationalFunction;
pub use symbols::{ExtComplex, SelfMap};
