//! Candidate symbols `φ` and their algebra: constants, rotations, affine
//! maps, and Möbius transformations, with composition, inversion, iteration
//! order, the dual map, and the disc-self-map decision.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::ToleranceConfig;

/// Canonicalization tolerance. Kept fixed (equal to the default `eq_tol`)
/// so `compose` and `tilde` need no configuration argument.
pub(crate) const CANON_TOL: f64 = 1e-9;

/// Probe points used for map equality: two Möbius maps agreeing at three
/// points are identical, a fourth adds numerical slack.
const PROBE_POINTS: [Complex64; 4] = [
    Complex64::new(0.31, 0.17),
    Complex64::new(-0.47, 0.11),
    Complex64::new(0.05, -0.53),
    Complex64::new(-0.22, -0.39),
];

#[derive(Debug, Error)]
pub enum SymbolError {
    #[error("rotation multiplier is not unimodular (|w| = {modulus})")]
    NotUnimodular { modulus: f64 },
    #[error("affine map requires a nonzero linear coefficient")]
    ZeroLinearCoefficient,
    #[error("Moebius coefficients are degenerate (determinant below tolerance)")]
    DegenerateMoebius,
    #[error("constant symbols have no dual map")]
    ConstantHasNoDual,
}

/// A point on the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

impl ExtComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    /// Chordal distance on the sphere; agrees with the Euclidean distance up
    /// to a bounded factor near the origin and handles infinity gracefully.
    pub fn chordal_distance(self, other: ExtComplex) -> f64 {
        match (self, other) {
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => {
                (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
            }
            (ExtComplex::Finite(a), ExtComplex::Infinity)
            | (ExtComplex::Infinity, ExtComplex::Finite(a)) => {
                1.0 / (1.0 + a.norm_sqr()).sqrt()
            }
            (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
        }
    }
}

/// An invariance-candidate symbol in canonical form.
///
/// Canonicalization rules: an affine map with no translation and unimodular
/// slope is a `Rotation`; the trivial rotation is `Identity`; a Möbius map
/// with (scaled) vanishing `c` is `Affine`; Möbius coefficients are scaled so
/// the first coefficient of maximal modulus equals 1.
#[derive(Debug, Clone, PartialEq)]
pub enum SelfMap {
    Constant(Complex64),
    Identity,
    Rotation(Complex64),
    Affine { a: Complex64, b: Complex64 },
    Moebius { a: Complex64, b: Complex64, c: Complex64, d: Complex64 },
}

fn canonical_rotation(omega: Complex64) -> SelfMap {
    let omega = omega / omega.norm();
    if (omega - Complex64::new(1.0, 0.0)).norm() < CANON_TOL {
        SelfMap::Identity
    } else {
        SelfMap::Rotation(omega)
    }
}

fn canonical_affine(a: Complex64, b: Complex64) -> SelfMap {
    if b.norm() < CANON_TOL && (a.norm() - 1.0).abs() < CANON_TOL {
        canonical_rotation(a)
    } else {
        SelfMap::Affine { a, b }
    }
}

/// Canonical map from homogeneous coefficients; a vanishing determinant
/// collapses to the constant value the map degenerates to.
fn canonical_from_matrix(m: [Complex64; 4]) -> SelfMap {
    let [a, b, c, d] = m;
    let max = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
    if max == 0.0 {
        return SelfMap::Constant(Complex64::new(f64::NAN, f64::NAN));
    }
    let lead = [a, b, c, d]
        .into_iter()
        .find(|x| x.norm() >= max * (1.0 - 1e-12))
        .unwrap();
    let (a, b, c, d) = (a / lead, b / lead, c / lead, d / lead);
    let det = a * d - b * c;
    if det.norm() <= CANON_TOL {
        // Constant composite: rows are proportional, the value is a/c = b/d.
        let value = if c.norm() >= d.norm() { a / c } else { b / d };
        return SelfMap::Constant(value);
    }
    if c.norm() < CANON_TOL {
        return canonical_affine(a / d, b / d);
    }
    SelfMap::Moebius { a, b, c, d }
}

impl SelfMap {
    /// Canonical map from homogeneous coefficients; degenerate input
    /// collapses to the constant the map converges to.
    pub(crate) fn from_matrix_canonical(m: [Complex64; 4]) -> Self {
        canonical_from_matrix(m)
    }

    pub fn constant(c: Complex64) -> Self {
        SelfMap::Constant(c)
    }

    pub fn identity() -> Self {
        SelfMap::Identity
    }

    /// The rotation `z ↦ ωz`; `ω` must be unimodular within `cfg.eq_tol`.
    pub fn rotation(omega: Complex64, cfg: &ToleranceConfig) -> Result<Self, SymbolError> {
        let modulus = omega.norm();
        if (modulus - 1.0).abs() >= cfg.eq_tol {
            return Err(SymbolError::NotUnimodular { modulus });
        }
        Ok(canonical_rotation(omega))
    }

    /// The affine map `z ↦ az + b` with `a ≠ 0`.
    pub fn affine(a: Complex64, b: Complex64, cfg: &ToleranceConfig) -> Result<Self, SymbolError> {
        if a.norm() <= cfg.eq_tol {
            return Err(SymbolError::ZeroLinearCoefficient);
        }
        Ok(canonical_affine(a, b))
    }

    /// The Möbius map `z ↦ (az + b)/(cz + d)` with `ad − bc ≠ 0`.
    pub fn moebius(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        cfg: &ToleranceConfig,
    ) -> Result<Self, SymbolError> {
        let max = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if max == 0.0 || (a * d - b * c).norm() / (max * max) <= cfg.eq_tol {
            return Err(SymbolError::DegenerateMoebius);
        }
        Ok(canonical_from_matrix([a, b, c, d]))
    }

    /// Homogeneous coefficients `(a, b, c, d)`; `None` for constants.
    pub fn matrix(&self) -> Option<[Complex64; 4]> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match self {
            SelfMap::Constant(_) => None,
            SelfMap::Identity => Some([one, zero, zero, one]),
            SelfMap::Rotation(omega) => Some([*omega, zero, zero, one]),
            SelfMap::Affine { a, b } => Some([*a, *b, zero, one]),
            SelfMap::Moebius { a, b, c, d } => Some([*a, *b, *c, *d]),
        }
    }

    /// Applies the map projectively; infinity is a value, not an error.
    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        match self {
            SelfMap::Constant(c) => ExtComplex::Finite(*c),
            _ => {
                let [a, b, c, d] = self.matrix().unwrap();
                match z {
                    ExtComplex::Finite(z) => {
                        let num = a * z + b;
                        let den = c * z + d;
                        if den.norm() == 0.0 {
                            ExtComplex::Infinity
                        } else {
                            ExtComplex::Finite(num / den)
                        }
                    }
                    ExtComplex::Infinity => {
                        if c.norm() == 0.0 {
                            ExtComplex::Infinity
                        } else {
                            ExtComplex::Finite(a / c)
                        }
                    }
                }
            }
        }
    }

    /// Convenience wrapper for finite arguments.
    pub fn apply_finite(&self, z: Complex64) -> ExtComplex {
        self.apply(ExtComplex::Finite(z))
    }

    /// The composite `self ∘ other` (apply `other` first), canonicalized.
    ///
    /// Constants absorb: `compose(φ, const c) = const φ(c)`. A degenerate
    /// Möbius composite collapses to the constant it converges to.
    pub fn compose(&self, other: &SelfMap) -> SelfMap {
        match (self, other) {
            (SelfMap::Constant(c), _) => SelfMap::Constant(*c),
            (_, SelfMap::Constant(c)) => match self.apply_finite(*c) {
                ExtComplex::Finite(v) => SelfMap::Constant(v),
                // Identically-infinite composite; not a symbol. Kept as a
                // non-finite constant, which every membership test rejects.
                ExtComplex::Infinity => {
                    SelfMap::Constant(Complex64::new(f64::INFINITY, f64::INFINITY))
                }
            },
            _ => {
                let [a1, b1, c1, d1] = self.matrix().unwrap();
                let [a2, b2, c2, d2] = other.matrix().unwrap();
                canonical_from_matrix([
                    a1 * a2 + b1 * c2,
                    a1 * b2 + b1 * d2,
                    c1 * a2 + d1 * c2,
                    c1 * b2 + d1 * d2,
                ])
            }
        }
    }

    /// Compositional inverse; absent for constants.
    pub fn inverse(&self) -> Option<SelfMap> {
        match self {
            SelfMap::Constant(_) => None,
            _ => {
                let [a, b, c, d] = self.matrix().unwrap();
                Some(canonical_from_matrix([d, -b, -c, a]))
            }
        }
    }

    /// Whether the map is the identity within `tol` (probe-point test).
    pub fn is_identity(&self, tol: f64) -> bool {
        match self {
            SelfMap::Identity => true,
            SelfMap::Constant(_) => false,
            _ => self.approx_eq(&SelfMap::Identity, tol),
        }
    }

    /// Map equality within `tol`: constants compare by value, nonconstant
    /// maps by their action at four fixed probe points (chordal metric).
    pub fn approx_eq(&self, other: &SelfMap, tol: f64) -> bool {
        match (self, other) {
            (SelfMap::Constant(x), SelfMap::Constant(y)) => {
                x.is_finite() && y.is_finite() && (x - y).norm() < tol
            }
            (SelfMap::Constant(_), _) | (_, SelfMap::Constant(_)) => false,
            _ => PROBE_POINTS.iter().all(|&z| {
                self.apply_finite(z)
                    .chordal_distance(other.apply_finite(z))
                    < tol
            }),
        }
    }

    /// Smallest `n ≤ cfg.max_order` with `φ^[n] = identity`, or `None`.
    pub fn order(&self, cfg: &ToleranceConfig) -> Option<u32> {
        if matches!(self, SelfMap::Constant(_)) {
            return None;
        }
        let mut acc = self.clone();
        for n in 1..=cfg.max_order {
            if acc.is_identity(cfg.eq_tol) {
                return Some(n);
            }
            acc = self.compose(&acc);
            if matches!(acc, SelfMap::Constant(_)) {
                return None;
            }
        }
        None
    }

    /// The dual map: for `φ = (az + b)/(cz + d)` this is
    /// `φ̃ = (āz − c̄)/(−b̄z + d̄)`. It transports invariance conditions to
    /// permutation conditions on the zero set. Involutive and well defined
    /// on the projective class.
    pub fn tilde(&self) -> Result<SelfMap, SymbolError> {
        let [a, b, c, d] = self.matrix().ok_or(SymbolError::ConstantHasNoDual)?;
        Ok(canonical_from_matrix([
            a.conj(),
            -c.conj(),
            -b.conj(),
            d.conj(),
        ]))
    }

    /// Decides `φ(D) ⊆ D` for the open unit disc.
    ///
    /// Constants: `|c| < 1`. Rotations: always. Affine: `|a| + |b| ≤ 1`.
    /// Möbius: the image of the unit circle is computed in closed form as the
    /// circle through the images of three boundary points; the map is a disc
    /// self-map when that circle lies in the closed disc and the image of 0
    /// is inside it (the interior side is the image of the disc).
    pub fn is_disc_self_map(&self, cfg: &ToleranceConfig) -> bool {
        match self {
            SelfMap::Constant(c) => c.is_finite() && c.norm() < 1.0,
            SelfMap::Identity | SelfMap::Rotation(_) => true,
            SelfMap::Affine { a, b } => a.norm() + b.norm() <= 1.0 + cfg.eq_tol,
            SelfMap::Moebius { .. } => {
                let probes = [
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 1.0),
                    Complex64::new(-1.0, 0.0),
                ];
                let mut images = [Complex64::new(0.0, 0.0); 3];
                for (slot, &p) in images.iter_mut().zip(&probes) {
                    match self.apply_finite(p) {
                        // A pole on the unit circle maps it to a line.
                        ExtComplex::Infinity => return false,
                        ExtComplex::Finite(w) => *slot = w,
                    }
                }
                let Some((center, radius)) = circumcircle(images[0], images[1], images[2])
                else {
                    return false;
                };
                let image_of_zero = match self.apply_finite(Complex64::new(0.0, 0.0)) {
                    ExtComplex::Infinity => return false,
                    ExtComplex::Finite(w) => w,
                };
                let interior_side = (image_of_zero - center).norm() < radius + cfg.eq_tol;
                let circle_in_disc = center.norm() + radius <= 1.0 + cfg.eq_tol;
                interior_side && circle_in_disc && image_of_zero.norm() < 1.0
            }
        }
    }
}

/// Center and radius of the circle through three points; `None` when the
/// points are (numerically) collinear.
fn circumcircle(w1: Complex64, w2: Complex64, w3: Complex64) -> Option<(Complex64, f64)> {
    let den = w1.conj() * (w2 - w3) + w2.conj() * (w3 - w1) + w3.conj() * (w1 - w2);
    let sep = (w1 - w2)
        .norm()
        .max((w2 - w3).norm())
        .max((w3 - w1).norm());
    // |den| is twice the triangle area scale, so compare against sep^2.
    if den.norm() <= 1e-10 * sep * sep {
        return None;
    }
    let num = w1.norm_sqr() * (w2 - w3) + w2.norm_sqr() * (w3 - w1) + w3.norm_sqr() * (w1 - w2);
    let center = num / den;
    Some((center, (w1 - center).norm()))
}
