//! Deterministic numeric kernel: complex comparison, root-of-unity order
//! detection, integer factorization, and least-squares residuals.
//!
//! Everything here is pure and stateless; the rest of the crate builds on it.

use num_complex::Complex64;
use thiserror::Error;

/// The numeric contract shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute complex distance below which two values are considered equal.
    pub eq_tol: f64,
    /// Relative least-squares residual separating span members from outsiders.
    pub residual_tol: f64,
    /// Conditioning guard for the least-squares solver.
    pub cond_max: f64,
    /// Upper bound for root-of-unity and iteration-order searches.
    pub max_order: u32,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eq_tol: 1e-9,
            residual_tol: 1e-8,
            cond_max: 1e10,
            max_order: 512,
        }
    }
}

impl ToleranceConfig {
    /// Checks the invariants: all tolerances strictly positive, `max_order ≥ 1`.
    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.eq_tol > 0.0) {
            return Err(NumericsError::InvalidConfig("eq_tol must be positive"));
        }
        if !(self.residual_tol > 0.0) {
            return Err(NumericsError::InvalidConfig("residual_tol must be positive"));
        }
        if !(self.cond_max > 0.0) {
            return Err(NumericsError::InvalidConfig("cond_max must be positive"));
        }
        if self.max_order < 1 {
            return Err(NumericsError::InvalidConfig("max_order must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("input is not unimodular within tolerance (|w| = {modulus})")]
    NotUnimodular { modulus: f64 },
    #[error("least-squares input dimensions are inconsistent")]
    DimensionMismatch,
    #[error("least-squares system is ill-conditioned (estimate {estimate:.3e})")]
    IllConditioned { estimate: f64 },
    #[error("invalid tolerance configuration: {0}")]
    InvalidConfig(&'static str),
}

/// Absolute-distance complex equality.
pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() < tol
}

/// Smallest `m ≤ cfg.max_order` with `|w^m − 1| < eq_tol`, or `None`.
///
/// The input must be unimodular within `eq_tol`; it is renormalized to exact
/// unit modulus before powering so the search does not drift radially.
pub fn root_of_unity_order(
    w: Complex64,
    cfg: &ToleranceConfig,
) -> Result<Option<u32>, NumericsError> {
    let modulus = w.norm();
    if (modulus - 1.0).abs() >= cfg.eq_tol {
        return Err(NumericsError::NotUnimodular { modulus });
    }
    let w = w / modulus;
    let one = Complex64::new(1.0, 0.0);
    let mut power = one;
    for m in 1..=cfg.max_order {
        power *= w;
        if approx_eq(power, one, cfg.eq_tol) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Prime factorization by trial division, ascending primes. Empty for `n = 1`.
pub fn prime_factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "prime_factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut k = 0u32;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    factors
}

/// All divisors of `n`, ascending. Contains `1` and `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut divs = vec![1u64];
    for (p, k) in prime_factorize(n) {
        let snapshot = divs.clone();
        let mut power = 1u64;
        for _ in 0..k {
            power *= p;
            divs.extend(snapshot.iter().map(|d| d * power));
        }
    }
    divs.sort_unstable();
    divs
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Minimal relative residual `min_c ‖Σ c_j col_j − target‖ / max(‖target‖, 1)`.
///
/// Solved by modified Gram–Schmidt with one reorthogonalization pass over
/// unit-normalized columns; the smallest pivot norm provides the conditioning
/// estimate. Deterministic given inputs.
pub fn least_squares_residual(
    columns: &[Vec<Complex64>],
    target: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<f64, NumericsError> {
    let rows = target.len();
    if rows < columns.len() || columns.iter().any(|c| c.len() != rows) {
        return Err(NumericsError::DimensionMismatch);
    }
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(columns.len());
    for col in columns {
        let scale = l2(col);
        if !(scale > 0.0) {
            return Err(NumericsError::IllConditioned {
                estimate: f64::INFINITY,
            });
        }
        let mut v: Vec<Complex64> = col.iter().map(|x| x / scale).collect();
        for _ in 0..2 {
            for q in &basis {
                let coeff = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= coeff * qi;
                }
            }
        }
        let pivot = l2(&v);
        let estimate = if pivot > 0.0 { 1.0 / pivot } else { f64::INFINITY };
        if estimate > cfg.cond_max {
            return Err(NumericsError::IllConditioned { estimate });
        }
        for vi in v.iter_mut() {
            *vi /= pivot;
        }
        basis.push(v);
    }
    let mut residual = target.to_vec();
    for _ in 0..2 {
        for q in &basis {
            let coeff = dot(q, &residual);
            for (ri, qi) in residual.iter_mut().zip(q) {
                *ri -= coeff * qi;
            }
        }
    }
    Ok(l2(&residual) / l2(target).max(1.0))
}

/// Singular values of the matrix whose columns are given, descending.
///
/// One-sided Jacobi: unitary 2x2 rotations orthogonalize column pairs, so the
/// final column norms are the singular values. No squaring of the matrix.
pub(crate) fn singular_values(columns: &[Vec<Complex64>]) -> Vec<f64> {
    let mut cols: Vec<Vec<Complex64>> = columns.to_vec();
    let n = cols.len();
    if n == 0 {
        return Vec::new();
    }
    for _sweep in 0..64 {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = cols[i].iter().map(|x| x.norm_sqr()).sum::<f64>();
                let beta = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>();
                let gamma = dot(&cols[i], &cols[j]);
                let g = gamma.norm();
                if g <= 1e-30 + 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..cols[i].len() {
                    let u = cols[i][r];
                    let v = cols[j][r];
                    cols[i][r] = c * u - s * phase.conj() * v;
                    cols[j][r] = s * phase * u + c * v;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut values: Vec<f64> = cols.iter().map(|c| l2(c)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}
