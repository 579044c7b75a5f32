//! Structural classification of the invariance families `D(Q_θ)` and
//! `L(Q_θ)`: which self-maps of the disc, respectively rational maps of the
//! sphere, compose a model space into itself.
//!
//! The dispatch splits on whether the product vanishes at the origin:
//!
//! * `θ(0) ≠ 0` — `D` is a finite cyclic rotation group (the rotation
//!   divisor), `L` a finite cyclic affine group found by a two-anchor solve;
//! * `θ(0) = 0` — constants enter, and the families are affine or Möbius:
//!   a fixed-point family for one nonzero zero, a multiplicity-matching
//!   Möbius family for two or more.
//!
//! Uncountable families are never materialized; they are predicate-backed
//! variants with a decidable membership test.

use num_complex::Complex64;
use thiserror::Error;

use crate::blaschke::{BlaschkeError, FiniteBlaschkeProduct};
use crate::numerics::{approx_eq, divisors, prime_factorize, ToleranceConfig};
use crate::symbols::{ExtComplex, SelfMap};

/// Cap on the sampled member list for the partially-enumerable two-zero
/// Möbius family.
const TWO_ZERO_SAMPLE_CAP: usize = 24;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("operation requires a product that does not vanish at the origin")]
    VanishesAtOrigin,
    #[error("operation requires a product vanishing at the origin with at least two nonzero zeros")]
    NeedsVanishingOrigin,
    #[error("operation requires at least two distinct zeros")]
    NeedsTwoZeros,
    #[error("{divisor} does not divide {n}")]
    NotADivisor { divisor: u32, n: u32 },
    #[error("orbit base zeros must be nonzero")]
    ZeroOrbitBase,
    #[error(transparent)]
    Blaschke(#[from] BlaschkeError),
}

/// Which constant symbols a family admits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstantsPart {
    None,
    OpenDisc,
    WholePlane,
    PlaneMinusPoint(Complex64),
}

/// A finite or parametric description of `D(Q_θ)` or `L(Q_θ)`.
#[derive(Debug, Clone)]
pub enum InvarianceFamily {
    /// Every analytic self-map of the disc (θ is the identity factor).
    AllSelfMaps,
    /// Every rational map of the sphere.
    AllRational,
    /// A materialized finite group with an optional maximal-order generator.
    FiniteSet {
        elements: Vec<SelfMap>,
        cyclic_generator: Option<SelfMap>,
        constants: ConstantsPart,
    },
    /// The affine line `{(1 − λ̄a)z + a : a ≠ 1/λ̄}`.
    AffineLine {
        lambda: Complex64,
        constants: ConstantsPart,
    },
    /// Möbius maps fixing the kernel pole `1/λ̄`.
    MoebiusFixedPoint {
        point: Complex64,
        restrict_to_disc: bool,
        constants: ConstantsPart,
    },
    /// Möbius maps whose dual permutes the nonzero zeros compatibly with
    /// multiplicities, with an optional pole-order floor at the origin.
    MoebiusMultMatch {
        theta: FiniteBlaschkeProduct,
        restrict_to_disc: bool,
        pole_floor: Option<u32>,
        constants: ConstantsPart,
        enumerated: Option<Vec<SelfMap>>,
        enumeration_complete: bool,
    },
}

fn origin() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn mult_at_ext(theta: &FiniteBlaschkeProduct, v: ExtComplex) -> u32 {
    match v {
        ExtComplex::Finite(z) => theta.mult_at(z),
        ExtComplex::Infinity => 0,
    }
}

fn variant_rank(map: &SelfMap) -> u8 {
    match map {
        SelfMap::Identity => 0,
        SelfMap::Rotation(_) => 1,
        SelfMap::Affine { .. } => 2,
        SelfMap::Moebius { .. } => 3,
        SelfMap::Constant(_) => 4,
    }
}

fn map_coeffs(map: &SelfMap) -> Vec<f64> {
    match map {
        SelfMap::Identity => Vec::new(),
        SelfMap::Rotation(w) => vec![w.re, w.im],
        SelfMap::Affine { a, b } => vec![a.re, a.im, b.re, b.im],
        SelfMap::Moebius { a, b, c, d } => {
            vec![a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im]
        }
        SelfMap::Constant(c) => vec![c.re, c.im],
    }
}

fn sort_maps(maps: &mut [SelfMap]) {
    maps.sort_by(|x, y| {
        variant_rank(x).cmp(&variant_rank(y)).then_with(|| {
            let cx = map_coeffs(x);
            let cy = map_coeffs(y);
            for (a, b) in cx.iter().zip(&cy) {
                let ord = a.total_cmp(b);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
}

fn push_unique(maps: &mut Vec<SelfMap>, candidate: SelfMap, tol: f64) {
    if !maps.iter().any(|m| m.approx_eq(&candidate, tol)) {
        maps.push(candidate);
    }
}

/// Whether `mult_θ(λ) = mult_θ(αλ)` for every zero of `θ`; the criterion for
/// the rotation `αz` to belong to `D(Q_θ)` when `θ(0) ≠ 0`.
pub fn mult_match_rotation(
    theta: &FiniteBlaschkeProduct,
    alpha: Complex64,
) -> Result<bool, ClassifierError> {
    if theta.vanishes_at_origin() {
        return Err(ClassifierError::VanishesAtOrigin);
    }
    let alpha = alpha / alpha.norm();
    Ok(theta
        .zeros()
        .iter()
        .all(|z| theta.mult_at(alpha * z.location) == z.multiplicity))
}

/// The divisor `d` of `#Z(θ)` with `D(Q_θ) = ⟨e^{2πi/d} z⟩`.
///
/// Searches divisors in decreasing order; the passing set is exactly the
/// divisor lattice of the answer, so the first hit is the largest.
pub fn rotation_divisor(theta: &FiniteBlaschkeProduct) -> Result<u32, ClassifierError> {
    if theta.vanishes_at_origin() {
        return Err(ClassifierError::VanishesAtOrigin);
    }
    let n = theta.distinct_zero_count() as u32;
    for &d in divisors(n as u64).iter().rev() {
        let alpha = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64);
        if mult_match_rotation(theta, alpha)? {
            return Ok(d as u32);
        }
    }
    unreachable!("divisor 1 always matches")
}

/// Whether the zero set is a full rotation cycle: all multiplicities equal
/// and the ratio set `{λ_j/λ_1}` multiplicatively closed. Equivalent to
/// `rotation_divisor(θ) == #Z(θ)`.
pub fn is_full_cycle(theta: &FiniteBlaschkeProduct) -> Result<bool, ClassifierError> {
    if theta.vanishes_at_origin() {
        return Err(ClassifierError::VanishesAtOrigin);
    }
    let zeros = theta.zeros();
    let mult = zeros[0].multiplicity;
    if zeros.iter().any(|z| z.multiplicity != mult) {
        return Ok(false);
    }
    let tol = theta.eq_tol();
    let base = zeros[0].location;
    let ratios: Vec<Complex64> = zeros.iter().map(|z| z.location / base).collect();
    if ratios.iter().any(|r| (r.norm() - 1.0).abs() >= tol) {
        return Ok(false);
    }
    for ri in &ratios {
        for rj in &ratios {
            let product = ri * rj;
            if !ratios.iter().any(|rk| approx_eq(product, *rk, tol)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `D(Q_θ) = {identity}`: no prime divisor of `#Z(θ)` yields a
/// multiplicity-preserving rotation.
pub fn is_d_trivial(theta: &FiniteBlaschkeProduct) -> Result<bool, ClassifierError> {
    if theta.vanishes_at_origin() {
        return Err(ClassifierError::VanishesAtOrigin);
    }
    let n = theta.distinct_zero_count() as u64;
    for (p, _) in prime_factorize(n) {
        let alpha = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / p as f64);
        if mult_match_rotation(theta, alpha)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The full finite cyclic affine group `L(Q_θ)` for `θ(0) ≠ 0`, `#Z(θ) ≥ 2`.
///
/// The dual of `az + b` fixes the origin, so two point images determine it:
/// for each multiplicity-compatible ordered pair of zeros `(μ1, μ2)` the
/// 2×2 system `ā λ_i + b̄ μ_i λ_i = μ_i` is solved and the candidate kept
/// when the dual preserves every multiplicity.
pub fn enumerate_l_affine(
    theta: &FiniteBlaschkeProduct,
    cfg: &ToleranceConfig,
) -> Result<InvarianceFamily, ClassifierError> {
    if theta.vanishes_at_origin() {
        return Err(ClassifierError::VanishesAtOrigin);
    }
    if theta.distinct_zero_count() < 2 {
        return Err(ClassifierError::NeedsTwoZeros);
    }
    let zeros = theta.zeros();
    let anchor1 = zeros[0];
    let anchor2 = zeros[1];
    let mut elements: Vec<SelfMap> = Vec::new();
    for mu1 in zeros {
        if mu1.multiplicity != anchor1.multiplicity {
            continue;
        }
        for mu2 in zeros {
            if mu2.multiplicity != anchor2.multiplicity {
                continue;
            }
            let det = anchor1.location * anchor2.location * (mu2.location - mu1.location);
            if det.norm() <= cfg.eq_tol * cfg.eq_tol {
                // The dual is injective, so equal images never occur.
                continue;
            }
            let a_bar = mu1.location * mu2.location * (anchor2.location - anchor1.location) / det;
            let b_bar = (anchor1.location * mu2.location - anchor2.location * mu1.location) / det;
            let a = a_bar.conj();
            let b = b_bar.conj();
            if a.norm() <= cfg.eq_tol {
                continue;
            }
            let Ok(candidate) = SelfMap::affine(a, b, cfg) else { continue };
            let Ok(dual) = candidate.tilde() else { continue };
            let preserves = zeros
                .iter()
                .all(|z| mult_at_ext(theta, dual.apply_finite(z.location)) == z.multiplicity);
            if preserves {
                push_unique(&mut elements, candidate, cfg.eq_tol);
            }
        }
    }
    sort_maps(&mut elements);
    let generator = max_order_element(&elements, cfg);
    Ok(InvarianceFamily::FiniteSet {
        elements,
        cyclic_generator: generator,
        constants: ConstantsPart::None,
    })
}

fn max_order_element(elements: &[SelfMap], cfg: &ToleranceConfig) -> Option<SelfMap> {
    let mut best: Option<(u32, &SelfMap)> = None;
    for e in elements {
        if let Some(order) = e.order(cfg) {
            if best.map_or(true, |(n, _)| order > n) {
                best = Some((order, e));
            }
        }
    }
    best.map(|(_, e)| e.clone())
}

/// Whether `L(Q_θ) = {identity}`: requires `θ(0) ≠ 0`, at least two distinct
/// zeros, and no nontrivial affine member.
pub fn is_l_trivial(theta: &FiniteBlaschkeProduct, cfg: &ToleranceConfig) -> bool {
    if theta.vanishes_at_origin() || theta.distinct_zero_count() < 2 {
        return false;
    }
    match enumerate_l_affine(theta, cfg) {
        Ok(InvarianceFamily::FiniteSet { elements, .. }) => {
            elements.len() == 1 && matches!(elements[0], SelfMap::Identity)
        }
        _ => false,
    }
}

/// Membership predicate for the Möbius multiplicity-matching family.
///
/// The dual must send every nonzero zero either to a zero of at least the
/// same multiplicity, or to the origin when the composed kernels (which then
/// degenerate to polynomials) fit under the origin multiplicity. The pole
/// floor bounds the monomial images: the dual's value at 0 must be a zero of
/// multiplicity at least `mult_θ(0) − 1`.
fn moebius_family_member(
    theta: &FiniteBlaschkeProduct,
    phi: &SelfMap,
    pole_floor: Option<u32>,
    cfg: &ToleranceConfig,
) -> bool {
    let Ok(dual) = phi.tilde() else { return false };
    let origin_mult = theta.origin_multiplicity() as i64;
    for zero in theta.nonzero_zeros() {
        match dual.apply_finite(zero.location) {
            ExtComplex::Infinity => return false,
            ExtComplex::Finite(w) => {
                if w.norm() < cfg.eq_tol {
                    if zero.multiplicity as i64 > origin_mult - 1 {
                        return false;
                    }
                } else if theta.mult_at(w) < zero.multiplicity {
                    return false;
                }
            }
        }
    }
    if let Some(floor) = pole_floor {
        if mult_at_ext(theta, dual.apply_finite(origin())) < floor {
            return false;
        }
    }
    true
}

/// The Möbius transformation sending three distinct finite points to three
/// distinct finite points, as a canonical map.
fn moebius_through(from: [Complex64; 3], to: [Complex64; 3]) -> SelfMap {
    // V sends (p0, p1, p2) to (0, 1, ∞); the map is adj(W)·V.
    let v = |p: [Complex64; 3]| {
        [
            p[1] - p[2],
            -p[0] * (p[1] - p[2]),
            p[1] - p[0],
            -p[2] * (p[1] - p[0]),
        ]
    };
    let a = v(from);
    let w = v(to);
    let w_adj = [w[3], -w[1], -w[2], w[0]];
    SelfMap::from_matrix_canonical([
        w_adj[0] * a[0] + w_adj[1] * a[2],
        w_adj[0] * a[1] + w_adj[1] * a[3],
        w_adj[2] * a[0] + w_adj[3] * a[2],
        w_adj[2] * a[1] + w_adj[3] * a[3],
    ])
}

/// Complete enumeration for three or more nonzero zeros: every member's dual
/// is pinned by its images of three anchor zeros, which range over the
/// multiplicity-compatible target triples.
fn enumerate_moebius_complete(
    theta: &FiniteBlaschkeProduct,
    pole_floor: Option<u32>,
    cfg: &ToleranceConfig,
) -> Vec<SelfMap> {
    let nonzero = theta.nonzero_zeros();
    let anchors = [nonzero[0], nonzero[1], nonzero[2]];
    let origin_mult = theta.origin_multiplicity() as i64;
    let mut targets: Vec<Complex64> = nonzero.iter().map(|z| z.location).collect();
    if origin_mult >= 2 {
        targets.push(origin());
    }
    let compatible = |anchor: &crate::blaschke::Zero, t: Complex64| {
        if t.norm() < cfg.eq_tol {
            (anchor.multiplicity as i64) <= origin_mult - 1
        } else {
            theta.mult_at(t) >= anchor.multiplicity
        }
    };
    let mut members: Vec<SelfMap> = Vec::new();
    for (i, &t1) in targets.iter().enumerate() {
        if !compatible(&anchors[0], t1) {
            continue;
        }
        for (j, &t2) in targets.iter().enumerate() {
            if j == i || !compatible(&anchors[1], t2) {
                continue;
            }
            for (k, &t3) in targets.iter().enumerate() {
                if k == i || k == j || !compatible(&anchors[2], t3) {
                    continue;
                }
                let dual = moebius_through(
                    [anchors[0].location, anchors[1].location, anchors[2].location],
                    [t1, t2, t3],
                );
                if matches!(dual, SelfMap::Constant(_)) {
                    continue;
                }
                let Ok(candidate) = dual.tilde() else { continue };
                if moebius_family_member(theta, &candidate, pole_floor, cfg) {
                    push_unique(&mut members, candidate, cfg.eq_tol);
                }
            }
        }
    }
    sort_maps(&mut members);
    members
}

/// Finite-order sampling for exactly two nonzero zeros: duals fixing or
/// swapping the pair are conjugated multiplier maps; root-of-unity
/// multipliers up to `max_order` are tried and verified.
fn enumerate_moebius_two_zero(
    theta: &FiniteBlaschkeProduct,
    pole_floor: Option<u32>,
    cfg: &ToleranceConfig,
) -> Vec<SelfMap> {
    let nonzero = theta.nonzero_zeros();
    let (z1, z2) = (nonzero[0].location, nonzero[1].location);
    // T sends (z1, z2) to (0, ∞).
    let one = Complex64::new(1.0, 0.0);
    let t_mat = [one, -z1, one, -z2];
    let t_inv = [-z2, z1, -one, one];
    let mul = |x: [Complex64; 4], y: [Complex64; 4]| {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut members: Vec<SelfMap> = Vec::new();
    for n in 1..=cfg.max_order {
        if members.len() >= TWO_ZERO_SAMPLE_CAP {
            break;
        }
        let kappa = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
        for mid in [[kappa, zero, zero, one], [zero, kappa, one, zero]] {
            let dual = SelfMap::from_matrix_canonical(mul(mul(t_inv, mid), t_mat));
            if matches!(dual, SelfMap::Constant(_)) {
                continue;
            }
            let Ok(candidate) = dual.tilde() else { continue };
            if moebius_family_member(theta, &candidate, pole_floor, cfg) {
                push_unique(&mut members, candidate, cfg.eq_tol);
            }
        }
    }
    sort_maps(&mut members);
    members
}

/// The Möbius family for `θ(0) = 0` with at least two nonzero zeros.
///
/// With three or more nonzero zeros the enumeration is complete and the
/// member list forms a group; with exactly two it is a finite-order sample
/// and `enumeration_complete` is false (the membership predicate remains
/// exact either way).
pub fn enumerate_moebius_group(
    theta: &FiniteBlaschkeProduct,
    cfg: &ToleranceConfig,
) -> Result<InvarianceFamily, ClassifierError> {
    if !theta.vanishes_at_origin() || theta.nonzero_zeros().len() < 2 {
        return Err(ClassifierError::NeedsVanishingOrigin);
    }
    let origin_mult = theta.origin_multiplicity();
    let pole_floor = if origin_mult >= 2 {
        Some(origin_mult - 1)
    } else {
        None
    };
    let complete = theta.nonzero_zeros().len() >= 3;
    let enumerated = if complete {
        enumerate_moebius_complete(theta, pole_floor, cfg)
    } else {
        enumerate_moebius_two_zero(theta, pole_floor, cfg)
    };
    Ok(InvarianceFamily::MoebiusMultMatch {
        theta: theta.clone(),
        restrict_to_disc: false,
        pole_floor,
        constants: ConstantsPart::WholePlane,
        enumerated: Some(enumerated),
        enumeration_complete: complete,
    })
}

fn identity_only(constants: ConstantsPart) -> InvarianceFamily {
    InvarianceFamily::FiniteSet {
        elements: vec![SelfMap::Identity],
        cyclic_generator: Some(SelfMap::Identity),
        constants,
    }
}

fn rotation_group(d: u32, constants: ConstantsPart, cfg: &ToleranceConfig) -> InvarianceFamily {
    let mut elements: Vec<SelfMap> = (0..d)
        .map(|k| {
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64);
            SelfMap::rotation(w, cfg).expect("unimodular by construction")
        })
        .collect();
    sort_maps(&mut elements);
    let generator = if d > 1 {
        Some(
            SelfMap::rotation(
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d as f64),
                cfg,
            )
            .expect("unimodular by construction"),
        )
    } else {
        Some(SelfMap::Identity)
    };
    InvarianceFamily::FiniteSet {
        elements,
        cyclic_generator: generator,
        constants,
    }
}

/// Computes `D(Q_θ)`: the analytic self-maps of the disc whose composition
/// operator leaves `Q_θ` invariant. Total over all finite Blaschke products.
pub fn classify_d(theta: &FiniteBlaschkeProduct, cfg: &ToleranceConfig) -> InvarianceFamily {
    let origin_mult = theta.origin_multiplicity();
    let nonzero = theta.nonzero_zeros().len();
    match (origin_mult, nonzero) {
        (0, 1) => identity_only(ConstantsPart::None),
        (0, _) => {
            let d = rotation_divisor(theta).expect("nonvanishing by dispatch");
            rotation_group(d, ConstantsPart::None, cfg)
        }
        (1, 0) => InvarianceFamily::AllSelfMaps,
        (_, 0) => InvarianceFamily::MoebiusMultMatch {
            theta: theta.clone(),
            restrict_to_disc: true,
            pole_floor: Some(origin_mult - 1),
            constants: ConstantsPart::OpenDisc,
            enumerated: None,
            enumeration_complete: false,
        },
        (1, 1) => InvarianceFamily::MoebiusFixedPoint {
            point: theta.nonzero_zeros()[0].location.conj().inv(),
            restrict_to_disc: true,
            constants: ConstantsPart::OpenDisc,
        },
        (_, 1) => identity_only(ConstantsPart::OpenDisc),
        (_, _) => {
            let family =
                enumerate_moebius_group(theta, cfg).expect("preconditions hold by dispatch");
            let InvarianceFamily::MoebiusMultMatch {
                theta,
                pole_floor,
                enumerated,
                enumeration_complete,
                ..
            } = family
            else {
                unreachable!()
            };
            let enumerated = enumerated.map(|list| {
                list.into_iter()
                    .filter(|m| m.is_disc_self_map(cfg))
                    .collect()
            });
            InvarianceFamily::MoebiusMultMatch {
                theta,
                restrict_to_disc: true,
                pole_floor,
                constants: ConstantsPart::OpenDisc,
                enumerated,
                enumeration_complete,
            }
        }
    }
}

/// Computes `L(Q_θ)`: the rational maps of the sphere whose composition
/// operator leaves `Q_θ` invariant. Total over all finite Blaschke products.
pub fn classify_l(theta: &FiniteBlaschkeProduct, cfg: &ToleranceConfig) -> InvarianceFamily {
    let origin_mult = theta.origin_multiplicity();
    let nonzero = theta.nonzero_zeros();
    match (origin_mult, nonzero.len()) {
        (0, 1) => InvarianceFamily::AffineLine {
            lambda: nonzero[0].location,
            constants: ConstantsPart::None,
        },
        (0, _) => enumerate_l_affine(theta, cfg).expect("preconditions hold by dispatch"),
        (1, 0) => InvarianceFamily::AllRational,
        (_, 0) => InvarianceFamily::MoebiusMultMatch {
            theta: theta.clone(),
            restrict_to_disc: false,
            pole_floor: Some(origin_mult - 1),
            constants: ConstantsPart::WholePlane,
            enumerated: None,
            enumeration_complete: false,
        },
        (1, 1) => InvarianceFamily::MoebiusFixedPoint {
            point: nonzero[0].location.conj().inv(),
            restrict_to_disc: false,
            constants: ConstantsPart::WholePlane,
        },
        (_, 1) => InvarianceFamily::AffineLine {
            lambda: nonzero[0].location,
            constants: ConstantsPart::PlaneMinusPoint(nonzero[0].location.conj().inv()),
        },
        (_, _) => enumerate_moebius_group(theta, cfg).expect("preconditions hold by dispatch"),
    }
}

fn constant_allowed(part: ConstantsPart, c: Complex64, cfg: &ToleranceConfig) -> bool {
    if !c.is_finite() {
        return false;
    }
    match part {
        ConstantsPart::None => false,
        ConstantsPart::OpenDisc => c.norm() < 1.0,
        ConstantsPart::WholePlane => true,
        ConstantsPart::PlaneMinusPoint(p) => (c - p).norm() > cfg.eq_tol,
    }
}

impl InvarianceFamily {
    /// Decides membership of `φ` in the family.
    pub fn contains(&self, phi: &SelfMap, cfg: &ToleranceConfig) -> bool {
        match self {
            InvarianceFamily::AllSelfMaps => phi.is_disc_self_map(cfg),
            InvarianceFamily::AllRational => {
                if let SelfMap::Constant(c) = phi {
                    c.is_finite()
                } else {
                    true
                }
            }
            InvarianceFamily::FiniteSet {
                elements, constants, ..
            } => match phi {
                SelfMap::Constant(c) => constant_allowed(*constants, *c, cfg),
                _ => elements.iter().any(|e| e.approx_eq(phi, cfg.eq_tol)),
            },
            InvarianceFamily::AffineLine { lambda, constants } => match phi {
                SelfMap::Constant(c) => constant_allowed(*constants, *c, cfg),
                SelfMap::Identity => true,
                SelfMap::Affine { a, b } => {
                    let expected = Complex64::new(1.0, 0.0) - lambda.conj() * b;
                    approx_eq(*a, expected, cfg.eq_tol)
                        && (b - lambda.conj().inv()).norm() > cfg.eq_tol
                }
                _ => false,
            },
            InvarianceFamily::MoebiusFixedPoint {
                point,
                restrict_to_disc,
                constants,
            } => match phi {
                SelfMap::Constant(c) => {
                    // The fixed point is the kernel pole; a constant there
                    // sends basis functions to infinity.
                    constant_allowed(*constants, *c, cfg) && (c - point).norm() > cfg.eq_tol
                }
                _ => {
                    let fixes = match phi.apply_finite(*point) {
                        ExtComplex::Finite(w) => (w - point).norm() < cfg.eq_tol,
                        ExtComplex::Infinity => false,
                    };
                    fixes && (!restrict_to_disc || phi.is_disc_self_map(cfg))
                }
            },
            InvarianceFamily::MoebiusMultMatch {
                theta,
                restrict_to_disc,
                pole_floor,
                constants,
                ..
            } => match phi {
                SelfMap::Constant(c) => {
                    let clear_of_poles = theta
                        .nonzero_zeros()
                        .iter()
                        .all(|z| (c - z.location.conj().inv()).norm() > cfg.eq_tol);
                    constant_allowed(*constants, *c, cfg) && clear_of_poles
                }
                _ => {
                    moebius_family_member(theta, phi, *pole_floor, cfg)
                        && (!restrict_to_disc || phi.is_disc_self_map(cfg))
                }
            },
        }
    }

    /// The materialized members, when the family carries any.
    pub fn enumerated_members(&self) -> &[SelfMap] {
        match self {
            InvarianceFamily::FiniteSet { elements, .. } => elements,
            InvarianceFamily::MoebiusMultMatch {
                enumerated: Some(list),
                ..
            } => list,
            _ => &[],
        }
    }
}

/// Builds a product with `n` distinct zeros whose rotation divisor is
/// exactly `d`: for `m = n/d` rings of radii `t/(m+1)`, the full `d`-orbit
/// on ring `t` carries multiplicity `t`.
pub fn construct_example(
    n: u32,
    d: u32,
    cfg: &ToleranceConfig,
) -> Result<FiniteBlaschkeProduct, ClassifierError> {
    if d == 0 || n == 0 || n % d != 0 {
        return Err(ClassifierError::NotADivisor { divisor: d, n });
    }
    let m = n / d;
    let mut pairs = Vec::with_capacity(n as usize);
    for t in 1..=m {
        let radius = t as f64 / (m as f64 + 1.0);
        for s in 1..=d {
            let angle = 2.0 * std::f64::consts::PI * s as f64 / d as f64;
            pairs.push((Complex64::from_polar(radius, angle), t));
        }
    }
    Ok(FiniteBlaschkeProduct::make(&pairs, cfg)?)
}

/// The union of full `n`-orbits of each base zero under rotation by
/// `e^{2πi/n}`, each orbit carrying its base multiplicity. Overlapping
/// orbits merge with multiplicities summed.
pub fn orbit_product(
    base_zeros: &[(Complex64, u32)],
    n: u32,
    cfg: &ToleranceConfig,
) -> Result<FiniteBlaschkeProduct, ClassifierError> {
    if base_zeros.iter().any(|(z, _)| z.norm() <= cfg.eq_tol) {
        return Err(ClassifierError::ZeroOrbitBase);
    }
    let mut pairs = Vec::with_capacity(base_zeros.len() * n as usize);
    for &(location, multiplicity) in base_zeros {
        for k in 1..=n {
            let rotation =
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            pairs.push((rotation * location, multiplicity));
        }
    }
    Ok(FiniteBlaschkeProduct::make(&pairs, cfg)?)
}
