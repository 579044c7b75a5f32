//! Finite Blaschke products represented as canonical zero multisets.
//!
//! The unimodular prefactor is deliberately not represented: `Q_{cθ} = Q_θ`
//! for `|c| = 1`, so it would be a spurious degree of freedom.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{approx_eq, ToleranceConfig};

/// Zeros must stay this far away from the unit circle; closer locations
/// destabilize the span oracle and are rejected.
pub const DISC_MARGIN: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum BlaschkeError {
    #[error("zero list must be nonempty")]
    Empty,
    #[error("zero location {location} is not strictly inside the unit disc")]
    OutsideDisc { location: Complex64 },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("evaluation point {point} is at a pole of the product")]
    AtPole { point: Complex64 },
}

/// A distinct zero of the product together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub location: Complex64,
    pub multiplicity: u32,
}

/// A finite Blaschke product `θ = ∏ b_{λ_j}^{m_j}` with
/// `b_λ(z) = (z − λ)/(1 − λ̄ z)`, stored as its canonically ordered zero set.
///
/// Zeros are sorted lexicographically by real then imaginary part, and
/// locations within `eq_tol` of each other are merged with multiplicities
/// summed. The construction tolerance is kept on the value so multiplicity
/// lookups need no extra configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBlaschkeProduct {
    zeros: Vec<Zero>,
    eq_tol: f64,
}

fn lex_cmp(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl FiniteBlaschkeProduct {
    /// Builds the product from `(location, multiplicity)` pairs.
    ///
    /// Near-duplicate locations (within `cfg.eq_tol`) are merged; the result
    /// is canonically ordered and independent of the input order.
    pub fn make(
        pairs: &[(Complex64, u32)],
        cfg: &ToleranceConfig,
    ) -> Result<Self, BlaschkeError> {
        if pairs.is_empty() {
            return Err(BlaschkeError::Empty);
        }
        for &(location, multiplicity) in pairs {
            if location.norm() >= 1.0 - DISC_MARGIN {
                return Err(BlaschkeError::OutsideDisc { location });
            }
            if multiplicity == 0 {
                return Err(BlaschkeError::ZeroMultiplicity);
            }
        }
        let mut sorted = pairs.to_vec();
        sorted.sort_by(|a, b| lex_cmp(a.0, b.0));
        let mut zeros: Vec<Zero> = Vec::new();
        for (location, multiplicity) in sorted {
            match zeros
                .iter_mut()
                .find(|z| approx_eq(z.location, location, cfg.eq_tol))
            {
                Some(existing) => existing.multiplicity += multiplicity,
                None => zeros.push(Zero {
                    location,
                    multiplicity,
                }),
            }
        }
        Ok(Self {
            zeros,
            eq_tol: cfg.eq_tol,
        })
    }

    /// The distinct zeros in canonical order.
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    /// The `(location, multiplicity)` pairs in canonical order.
    pub fn pairs(&self) -> Vec<(Complex64, u32)> {
        self.zeros.iter().map(|z| (z.location, z.multiplicity)).collect()
    }

    /// Equality tolerance the product was built with.
    pub fn eq_tol(&self) -> f64 {
        self.eq_tol
    }

    /// Degree of the product: the sum of multiplicities.
    pub fn degree(&self) -> u32 {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    /// Number of distinct zeros, `#Z(θ)`.
    pub fn distinct_zero_count(&self) -> usize {
        self.zeros.len()
    }

    /// Multiplicity of the zero within `eq_tol` of `point`, else 0.
    pub fn mult_at(&self, point: Complex64) -> u32 {
        self.zeros
            .iter()
            .find(|z| approx_eq(z.location, point, self.eq_tol))
            .map_or(0, |z| z.multiplicity)
    }

    /// Whether the product vanishes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        self.mult_at(Complex64::new(0.0, 0.0)) > 0
    }

    /// Multiplicity of the origin zero (0 when `θ(0) ≠ 0`).
    pub fn origin_multiplicity(&self) -> u32 {
        self.mult_at(Complex64::new(0.0, 0.0))
    }

    /// The distinct nonzero zeros, canonical order.
    pub fn nonzero_zeros(&self) -> Vec<Zero> {
        self.zeros
            .iter()
            .filter(|z| z.location.norm() >= self.eq_tol)
            .copied()
            .collect()
    }

    /// Evaluates `θ(z)` as the product of the factors `b_λ(z)^m`.
    ///
    /// Errors when `z` sits within `eq_tol` of a pole `1/λ̄`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64, BlaschkeError> {
        let mut value = Complex64::new(1.0, 0.0);
        for zero in &self.zeros {
            let lambda = zero.location;
            if lambda.norm() >= self.eq_tol {
                let pole = lambda.conj().inv();
                if approx_eq(z, pole, self.eq_tol) {
                    return Err(BlaschkeError::AtPole { point: z });
                }
            }
            let factor = (z - lambda) / (Complex64::new(1.0, 0.0) - lambda.conj() * z);
            value *= factor.powi(zero.multiplicity as i32);
        }
        Ok(value)
    }
}
