//! Theorem-independent invariance certifier.
//!
//! Builds the explicit rational-function basis of `Q_θ` (Cauchy-type kernels
//! at the nonzero zeros, monomials for a zero at the origin), composes each
//! basis element with the symbol exactly, and decides span membership by
//! sampling on two interior circles and solving a least-squares problem.
//! Nothing in this module consults the classifier.

use num_complex::Complex64;
use thiserror::Error;

use crate::blaschke::FiniteBlaschkeProduct;
use crate::numerics::{self, NumericsError, ToleranceConfig};
use crate::symbols::SelfMap;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("constant symbols are decided directly, not composed")]
    ConstantSymbol,
    #[error("sampling stayed ill-conditioned after {attempts} attempts")]
    Conditioning { attempts: u32 },
    #[error("image_rank requires an invariant pair")]
    NotInvariant,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Coefficients below this relative size are treated as zero when trimming.
const TRIM_REL: f64 = 1e-12;
/// Sample points closer than this to a pole of the target are discarded.
const POLE_EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
struct Poly {
    // ascending coefficients, trimmed, never empty
    coeffs: Vec<Complex64>,
}

impl Poly {
    fn new(mut coeffs: Vec<Complex64>) -> Self {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = TRIM_REL * max;
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.norm() <= cutoff) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    fn zero() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0)])
    }

    fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division with remainder; requires a nonzero divisor.
    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree();
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![Complex64::new(0.0, 0.0); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i] / lead;
            quot[i - dd] = q;
            for j in 0..=dd {
                rem[i - dd + j] -= q * divisor.coeffs[j];
            }
            rem[i] = Complex64::new(0.0, 0.0);
        }
        (Poly::new(quot), Poly::new(rem))
    }
}

/// Tolerant Euclidean GCD; returns a constant when no common root is found.
fn poly_gcd(a: &Poly, b: &Poly, tol: f64) -> Poly {
    let mut f = a.clone();
    let mut g = b.clone();
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    while g.degree() > 0 || !g.is_zero() {
        if g.max_coeff() <= tol * f.max_coeff().max(1.0) {
            break;
        }
        let (_, rem) = f.div_rem(&g);
        if rem.max_coeff() <= tol * g.max_coeff().max(1.0) {
            return g;
        }
        f = g;
        g = rem;
        if g.degree() == 0 {
            break;
        }
    }
    Poly::one()
}

/// A ratio of complex-coefficient polynomials, stored with ascending
/// coefficient lists and a deterministic normalization (common roots reduced,
/// denominator scaled to unit maximal coefficient).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds `num/den` from ascending coefficient slices.
    pub fn new(num: &[Complex64], den: &[Complex64]) -> Result<Self, OracleError> {
        Self::from_polys(Poly::new(num.to_vec()), Poly::new(den.to_vec()))
    }

    fn from_polys(num: Poly, den: Poly) -> Result<Self, OracleError> {
        if den.is_zero() {
            return Err(OracleError::ZeroDenominator);
        }
        let mut num = num;
        let mut den = den;
        // Common-root reduction, applied only when both divisions are exact
        // within tolerance.
        if num.degree() >= 1 && den.degree() >= 1 && !num.is_zero() {
            let g = poly_gcd(&num, &den, 1e-10);
            if g.degree() >= 1 {
                let (qn, rn) = num.div_rem(&g);
                let (qd, rd) = den.div_rem(&g);
                if rn.max_coeff() <= 1e-9 * num.max_coeff().max(1.0)
                    && rd.max_coeff() <= 1e-9 * den.max_coeff().max(1.0)
                {
                    num = qn;
                    den = qd;
                }
            }
        }
        let scale = den
            .coeffs
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .copied()
            .unwrap();
        num = num.scale(scale.inv());
        den = den.scale(scale.inv());
        Ok(Self { num, den })
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// The identity function `z`.
    pub fn var() -> Self {
        Self {
            num: Poly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.num.coeffs
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.den.coeffs
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    /// Value at `z`, or `None` within the pole-exclusion window.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        let den = self.den.eval(z);
        if den.norm() < POLE_EXCLUSION {
            return None;
        }
        Some(self.num.eval(z) / den)
    }

    /// Value at `z` without the pole window; for functions known to be
    /// finite there (kernel basis elements on the sample rings).
    fn eval_unwindowed(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    fn denominator_value(&self, z: Complex64) -> f64 {
        self.den.eval(z).norm()
    }
}

/// The kernel basis of `Q_θ`: for each zero `λ ≠ 0` of multiplicity `m` the
/// functions `1/(1 − λ̄z)^j`, `j = 1..m`; for a zero at the origin of
/// multiplicity `m` the monomials `1, z, …, z^{m−1}`. Length equals `deg θ`.
pub fn basis(theta: &FiniteBlaschkeProduct) -> Vec<RationalFunction> {
    let mut out = Vec::with_capacity(theta.degree() as usize);
    let one = Complex64::new(1.0, 0.0);
    for zero in theta.zeros() {
        if zero.location.norm() < theta.eq_tol() {
            for j in 0..zero.multiplicity {
                let mut num = vec![Complex64::new(0.0, 0.0); j as usize + 1];
                num[j as usize] = one;
                out.push(RationalFunction {
                    num: Poly::new(num),
                    den: Poly::one(),
                });
            }
        } else {
            let factor = Poly::new(vec![one, -zero.location.conj()]);
            for j in 1..=zero.multiplicity {
                out.push(RationalFunction {
                    num: Poly::one(),
                    den: factor.pow(j),
                });
            }
        }
    }
    out
}

/// Exact composition `f ∘ φ` as a single reduced fraction.
pub fn compose_rational(
    f: &RationalFunction,
    phi: &SelfMap,
) -> Result<RationalFunction, OracleError> {
    let [a, b, c, d] = phi.matrix().ok_or(OracleError::ConstantSymbol)?;
    let r = Poly::new(vec![b, a]);
    let s = Poly::new(vec![d, c]);
    let dp = f.num.degree();
    let dq = f.den.degree();
    let top = dp.max(dq);
    let mut r_pows = Vec::with_capacity(top + 1);
    let mut s_pows = Vec::with_capacity(top + 1);
    r_pows.push(Poly::one());
    s_pows.push(Poly::one());
    for k in 1..=top {
        r_pows.push(r_pows[k - 1].mul(&r));
        s_pows.push(s_pows[k - 1].mul(&s));
    }
    let homogenize = |p: &Poly, deg: usize| {
        let mut acc = Poly::zero();
        for (k, coeff) in p.coeffs.iter().enumerate() {
            acc = acc.add(&r_pows[k].mul(&s_pows[deg - k]).scale(*coeff));
        }
        acc
    };
    let p_hom = homogenize(&f.num, dp);
    let q_hom = homogenize(&f.den, dq);
    let (num, den) = if dq >= dp {
        (p_hom.mul(&s_pows[dq - dp]), q_hom)
    } else {
        (p_hom, q_hom.mul(&s_pows[dp - dq]))
    };
    RationalFunction::from_polys(num, den)
}

fn ring_points(count: usize, radius: f64, phase: f64) -> impl Iterator<Item = Complex64> {
    (0..count).map(move |k| {
        Complex64::from_polar(
            radius,
            2.0 * std::f64::consts::PI * k as f64 / count as f64 + phase,
        )
    })
}

/// Sample points on `|z| = 0.5` and `|z| = 0.25` (the second ring offset by
/// 0.1 rad), excluding points inside the pole window of `f`.
fn sample_points(f: &RationalFunction, total: usize, jitter: f64) -> Vec<Complex64> {
    let per_ring = (total + 1) / 2;
    ring_points(per_ring, 0.5, jitter)
        .chain(ring_points(per_ring, 0.25, 0.1 + jitter))
        .filter(|&z| f.denominator_value(z) >= POLE_EXCLUSION)
        .collect()
}

/// Decides `f ∈ Q_θ` by least squares over the kernel basis.
///
/// Returns the verdict and the relative residual. Ill-conditioned samplings
/// are retried with jittered phases up to three times.
pub fn in_span(
    f: &RationalFunction,
    theta: &FiniteBlaschkeProduct,
    cfg: &ToleranceConfig,
) -> Result<(bool, f64), OracleError> {
    let basis_fns = basis(theta);
    let total = 4 * (theta.degree() as usize + f.degree() + 2);
    let mut attempts = 0u32;
    for attempt in 0..4 {
        attempts += 1;
        let jitter = 0.37 * attempt as f64;
        let points = sample_points(f, total, jitter);
        if points.len() < basis_fns.len() + 1 {
            continue;
        }
        let target: Option<Vec<Complex64>> = points.iter().map(|&z| f.eval(z)).collect();
        let Some(target) = target else { continue };
        let columns: Vec<Vec<Complex64>> = basis_fns
            .iter()
            .map(|b| points.iter().map(|&z| b.eval_unwindowed(z)).collect())
            .collect();
        match numerics::least_squares_residual(&columns, &target, cfg) {
            Ok(residual) => return Ok((residual < cfg.residual_tol, residual)),
            Err(NumericsError::IllConditioned { .. }) => continue,
            Err(other) => return Err(other.into()),
        }
    }
    Err(OracleError::Conditioning { attempts })
}

/// Outcome of a full invariance check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// Largest span residual over the composed basis; 0 for constant symbols
    /// decided structurally, infinite when a composed basis element blows up.
    pub max_residual: f64,
}

/// Decides `C_φ Q_θ ⊆ Q_θ` and reports the worst residual seen.
///
/// Constant symbols are decided directly: the image is the span of constants,
/// so the symbol is invariant exactly when constants lie in `Q_θ` (a zero at
/// the origin) and no basis function has a pole at the constant. Disc
/// membership of the constant is a separate concern left to the caller.
pub fn invariance_report(
    theta: &FiniteBlaschkeProduct,
    phi: &SelfMap,
    cfg: &ToleranceConfig,
) -> Result<InvarianceReport, OracleError> {
    if let SelfMap::Constant(c) = phi {
        if !c.is_finite() {
            return Ok(InvarianceReport {
                invariant: false,
                max_residual: f64::INFINITY,
            });
        }
        let finite_everywhere = theta
            .nonzero_zeros()
            .iter()
            .all(|z| (c - z.location.conj().inv()).norm() > cfg.eq_tol);
        if !finite_everywhere {
            return Ok(InvarianceReport {
                invariant: false,
                max_residual: f64::INFINITY,
            });
        }
        if !theta.vanishes_at_origin() {
            // Constants are not in Q_θ; report their span distance.
            let (_, residual) = in_span(&RationalFunction::one(), theta, cfg)?;
            return Ok(InvarianceReport {
                invariant: false,
                max_residual: residual,
            });
        }
        return Ok(InvarianceReport {
            invariant: true,
            max_residual: 0.0,
        });
    }
    let mut invariant = true;
    let mut max_residual = 0.0f64;
    for b in basis(theta) {
        let composed = compose_rational(&b, phi)?;
        let (ok, residual) = in_span(&composed, theta, cfg)?;
        invariant &= ok;
        max_residual = max_residual.max(residual);
    }
    Ok(InvarianceReport {
        invariant,
        max_residual,
    })
}

/// Whether `C_φ Q_θ ⊆ Q_θ`.
pub fn is_invariant(
    theta: &FiniteBlaschkeProduct,
    phi: &SelfMap,
    cfg: &ToleranceConfig,
) -> Result<bool, OracleError> {
    invariance_report(theta, phi, cfg).map(|r| r.invariant)
}

/// Numerical rank of `C_φ` restricted to `Q_θ`: the rank of the evaluation
/// matrix of the composed basis. Equals `deg θ` exactly when the restriction
/// is surjective. Requires an invariant pair.
pub fn image_rank(
    theta: &FiniteBlaschkeProduct,
    phi: &SelfMap,
    cfg: &ToleranceConfig,
) -> Result<u32, OracleError> {
    let report = invariance_report(theta, phi, cfg)?;
    if !report.invariant {
        return Err(OracleError::NotInvariant);
    }
    if matches!(phi, SelfMap::Constant(_)) {
        // The image is the one-dimensional span of constants.
        return Ok(1);
    }
    let composites: Result<Vec<RationalFunction>, OracleError> =
        basis(theta).iter().map(|b| compose_rational(b, phi)).collect();
    let composites = composites?;
    let degf = composites.iter().map(|f| f.degree()).max().unwrap_or(0);
    let total = 4 * (theta.degree() as usize + degf + 2);
    let per_ring = (total + 1) / 2;
    let points: Vec<Complex64> = ring_points(per_ring, 0.5, 0.0)
        .chain(ring_points(per_ring, 0.25, 0.1))
        .filter(|&z| {
            composites
                .iter()
                .all(|f| f.denominator_value(z) >= POLE_EXCLUSION)
        })
        .collect();
    let columns: Vec<Vec<Complex64>> = composites
        .iter()
        .map(|f| points.iter().map(|&z| f.eval_unwindowed(z)).collect())
        .collect();
    let sv = numerics::singular_values(&columns);
    let Some(&top) = sv.first() else { return Ok(0) };
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > cfg.residual_tol * top).count() as u32)
}
