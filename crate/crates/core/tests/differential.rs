//! Randomized differential testing: for products of every dispatch class and
//! symbols of every kind, the structural membership test and the span oracle
//! must return the same verdict — on both the sphere side and the disc side.

mod common;

use common::*;
use mobiusmodel::classifier::{classify_d, classify_l};
use mobiusmodel::oracle::{is_invariant, OracleError};
use mobiusmodel::{FiniteBlaschkeProduct, InvarianceFamily, SelfMap, ToleranceConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn product(pairs: &[(Complex64, u32)]) -> FiniteBlaschkeProduct {
    FiniteBlaschkeProduct::make(pairs, &cfg()).unwrap()
}

/// A random product from one of the seven dispatch classes.
fn random_theta_any_class<R: Rng>(rng: &mut R) -> FiniteBlaschkeProduct {
    let class = rng.gen_range(0..7u32);
    let zero = Complex64::new(0.0, 0.0);
    match class {
        0 => product(&[(zero, 1)]),
        1 => product(&[(random_annulus_point(rng, 0.1, 0.7), rng.gen_range(1..=3))]),
        2 => random_nonvanishing_theta(rng, 6),
        3 => product(&[(zero, rng.gen_range(2..=4))]),
        4 => product(&[
            (zero, 1),
            (random_annulus_point(rng, 0.1, 0.7), rng.gen_range(1..=2)),
        ]),
        5 => product(&[
            (zero, rng.gen_range(2..=3)),
            (random_annulus_point(rng, 0.1, 0.7), rng.gen_range(1..=2)),
        ]),
        _ => {
            let mut pairs = vec![(zero, rng.gen_range(1..=2))];
            let count = rng.gen_range(2..=3);
            for _ in 0..count {
                let mut location = random_annulus_point(rng, 0.15, 0.7);
                for _ in 0..40 {
                    if pairs.iter().all(|(z, _): &(Complex64, u32)| {
                        (z - location).norm() > 5e-2
                    }) {
                        break;
                    }
                    location = random_annulus_point(rng, 0.15, 0.7);
                }
                pairs.push((location, rng.gen_range(1..=2)));
            }
            product(&pairs)
        }
    }
}

/// A symbol likely (but not guaranteed) to belong to the family; mixing in
/// near-misses is intentional, the assertion only needs both routes to agree.
fn candidate_member<R: Rng>(
    rng: &mut R,
    theta: &FiniteBlaschkeProduct,
    family: &InvarianceFamily,
) -> Option<SelfMap> {
    match family {
        InvarianceFamily::AllSelfMaps => Some(random_automorphism(rng, 0.5)),
        InvarianceFamily::AllRational => Some(random_moebius(rng)),
        InvarianceFamily::FiniteSet { elements, .. } => {
            let pick = rng.gen_range(0..elements.len());
            Some(elements[pick].clone())
        }
        InvarianceFamily::AffineLine { lambda, .. } => {
            let a = random_annulus_point(rng, 0.0, 1.2);
            let slope = Complex64::new(1.0, 0.0) - lambda.conj() * a;
            SelfMap::affine(slope, a, &cfg()).ok()
        }
        InvarianceFamily::MoebiusFixedPoint { point, .. } => {
            let q1 = random_annulus_point(rng, 0.1, 0.6);
            let q2 = -q1 * Complex64::new(0.0, 1.0);
            let r1 = random_annulus_point(rng, 0.1, 0.6);
            let r2 = r1 + Complex64::new(0.3, 0.1);
            if (q1 - q2).norm() < 1e-3 || (r1 - r2).norm() < 1e-3 {
                return None;
            }
            Some(moebius_through_three([*point, q1, q2], [*point, r1, r2]))
        }
        InvarianceFamily::MoebiusMultMatch { enumerated, .. } => {
            if theta.nonzero_zeros().is_empty() {
                // Power of z: affine maps belong.
                let a = random_annulus_point(rng, 0.1, 1.0);
                let b = random_annulus_point(rng, 0.0, 1.0);
                return SelfMap::affine(a, b, &cfg()).ok();
            }
            let list = enumerated.as_ref()?;
            if list.is_empty() {
                return None;
            }
            let pick = rng.gen_range(0..list.len());
            Some(list[pick].clone())
        }
    }
}

fn random_symbol<R: Rng>(rng: &mut R) -> SelfMap {
    match rng.gen_range(0..5u32) {
        0 => SelfMap::constant(random_annulus_point(rng, 0.0, 2.2)),
        1 => SelfMap::rotation(
            Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * std::f64::consts::PI)),
            &cfg(),
        )
        .unwrap(),
        2 => {
            let a = random_annulus_point(rng, 0.05, 1.5);
            let b = random_annulus_point(rng, 0.0, 1.5);
            SelfMap::affine(a, b, &cfg()).unwrap_or(SelfMap::Identity)
        }
        3 => random_automorphism(rng, 0.7),
        _ => random_moebius(rng),
    }
}

#[test]
fn structural_and_oracle_verdicts_agree_everywhere() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(31415);
    let mut pairs_checked = 0u32;
    let mut skipped = 0u32;
    for _ in 0..150 {
        let theta = random_theta_any_class(&mut rng);
        let l_family = classify_l(&theta, &cfg);
        let d_family = classify_d(&theta, &cfg);
        let mut symbols: Vec<SelfMap> = Vec::new();
        for _ in 0..3 {
            if let Some(member) = candidate_member(&mut rng, &theta, &l_family) {
                symbols.push(member);
            }
        }
        for _ in 0..6 {
            symbols.push(random_symbol(&mut rng));
        }
        symbols.push(SelfMap::Identity);
        for symbol in symbols {
            let theorem_l = l_family.contains(&symbol, &cfg);
            let theorem_d = d_family.contains(&symbol, &cfg);
            let oracle_l = match is_invariant(&theta, &symbol, &cfg) {
                Ok(v) => v,
                Err(OracleError::Conditioning { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(other) => panic!("oracle failed: {other}"),
            };
            let disc = match &symbol {
                SelfMap::Constant(c) => c.norm() < 1.0,
                other => other.is_disc_self_map(&cfg),
            };
            let oracle_d = oracle_l && disc;
            assert_eq!(
                theorem_l, oracle_l,
                "L disagreement on {:?} over {:?}",
                symbol,
                theta.pairs()
            );
            assert_eq!(
                theorem_d, oracle_d,
                "D disagreement on {:?} over {:?}",
                symbol,
                theta.pairs()
            );
            pairs_checked += 1;
        }
    }
    assert!(pairs_checked >= 1200, "only {pairs_checked} pairs checked");
    assert!(
        skipped <= pairs_checked / 20,
        "too many conditioning skips: {skipped}"
    );
}

/// The tolerance contract is honored end to end: classify and check behave
/// identically under the loose profile used for rough work.
#[test]
fn loose_tolerances_remain_consistent() {
    let loose = ToleranceConfig {
        eq_tol: 1e-7,
        residual_tol: 1e-6,
        cond_max: 1e13,
        max_order: 256,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    for _ in 0..20 {
        let theta = random_theta_any_class(&mut rng);
        let l_family = classify_l(&theta, &loose);
        for _ in 0..3 {
            let symbol = random_symbol(&mut rng);
            let theorem = l_family.contains(&symbol, &loose);
            match is_invariant(&theta, &symbol, &loose) {
                Ok(oracle) => assert_eq!(
                    theorem,
                    oracle,
                    "loose-profile disagreement on {:?} over {:?}",
                    symbol,
                    theta.pairs()
                ),
                Err(OracleError::Conditioning { .. }) => continue,
                Err(other) => panic!("oracle failed: {other}"),
            }
        }
    }
}
