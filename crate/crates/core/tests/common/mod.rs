//! Shared generators for the integration suites. Deterministic: every suite
//! seeds its own ChaCha stream.
#![allow(dead_code)]

use mobiusmodel::classifier::orbit_product;
use mobiusmodel::{FiniteBlaschkeProduct, SelfMap, ToleranceConfig};
use num_complex::Complex64;
use rand::Rng;

pub fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_annulus_point<R: Rng>(rng: &mut R, r_min: f64, r_max: f64) -> Complex64 {
    let radius = rng.gen_range(r_min..r_max);
    let angle = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    Complex64::from_polar(radius, angle)
}

/// Random product with `θ(0) ≠ 0`, zeros in the annulus `0.1 ≤ |λ| ≤ 0.7`,
/// degree at most `max_degree`. Half the draws use a full rotation orbit so
/// nontrivial divisors actually occur.
pub fn random_nonvanishing_theta<R: Rng>(
    rng: &mut R,
    max_degree: u32,
) -> FiniteBlaschkeProduct {
    let config = cfg();
    loop {
        let structured = rng.gen_bool(0.5);
        let candidate = if structured {
            let orbit_len = rng.gen_range(2..=4u32);
            let copies = (max_degree / orbit_len).max(1);
            let bases = rng.gen_range(1..=copies.min(2));
            let mut base_zeros = Vec::new();
            for _ in 0..bases {
                let mult = rng.gen_range(1..=2u32);
                base_zeros.push((random_annulus_point(rng, 0.1, 0.7), mult));
            }
            orbit_product(&base_zeros, orbit_len, &config).ok()
        } else {
            let count = rng.gen_range(1..=max_degree.min(5));
            let mut pairs: Vec<(Complex64, u32)> = Vec::new();
            for _ in 0..count {
                let mut location = random_annulus_point(rng, 0.1, 0.7);
                // Keep zeros separated; coincidences are a different regime.
                for _ in 0..40 {
                    if pairs.iter().all(|(z, _)| (z - location).norm() > 5e-2) {
                        break;
                    }
                    location = random_annulus_point(rng, 0.1, 0.7);
                }
                pairs.push((location, rng.gen_range(1..=2u32)));
            }
            FiniteBlaschkeProduct::make(&pairs, &config).ok()
        };
        if let Some(theta) = candidate {
            if theta.degree() <= max_degree && !theta.vanishes_at_origin() {
                let healthy = theta.zeros().iter().all(|zi| {
                    theta
                        .zeros()
                        .iter()
                        .filter(|zj| (zi.location - zj.location).norm() > 0.0)
                        .all(|zj| (zi.location - zj.location).norm() > 5e-2)
                });
                if healthy {
                    return theta;
                }
            }
        }
    }
}

pub fn random_moebius<R: Rng>(rng: &mut R) -> SelfMap {
    let config = cfg();
    loop {
        let coeff = |rng: &mut R| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (a, b, cc, d) = (coeff(rng), coeff(rng), coeff(rng), coeff(rng));
        if let Ok(map) = SelfMap::moebius(a, b, cc, d, &config) {
            if matches!(map, SelfMap::Moebius { .. }) {
                return map;
            }
        }
    }
}

/// A random disc automorphism `e^{iα} (z − a)/(1 − āz)` with `|a| ≤ radius`.
pub fn random_automorphism<R: Rng>(rng: &mut R, radius: f64) -> SelfMap {
    let config = cfg();
    let a = random_annulus_point(rng, 0.0, radius.max(1e-3));
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * std::f64::consts::PI));
    SelfMap::moebius(phase, -phase * a, -a.conj(), c(1.0, 0.0), &config)
        .expect("automorphism coefficients are nondegenerate")
}

/// A random elliptic map of exact order `n`: a rotation by a primitive
/// `n`-th root of unity conjugated by a random automorphism.
pub fn random_elliptic<R: Rng>(rng: &mut R, n: u32) -> SelfMap {
    let config = cfg();
    let h = random_automorphism(rng, 0.6);
    let h_inv = h.inverse().expect("automorphisms are invertible");
    let rotation = SelfMap::rotation(
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64),
        &config,
    )
    .unwrap();
    h_inv.compose(&rotation).compose(&h)
}

/// The Möbius map sending three distinct finite points to three distinct
/// finite points, via cross-ratio normal forms.
pub fn moebius_through_three(from: [Complex64; 3], to: [Complex64; 3]) -> SelfMap {
    let send = |p: [Complex64; 3]| {
        (
            p[1] - p[2],
            -p[0] * (p[1] - p[2]),
            p[1] - p[0],
            -p[2] * (p[1] - p[0]),
        )
    };
    let (a1, b1, c1, d1) = send(from);
    let (a2, b2, c2, d2) = send(to);
    let (ia, ib, ic, id) = (d2, -b2, -c2, a2);
    SelfMap::moebius(
        ia * a1 + ib * c1,
        ia * b1 + ib * d1,
        ic * a1 + id * c1,
        ic * b1 + id * d1,
        &cfg(),
    )
    .expect("distinct points give a nondegenerate map")
}
