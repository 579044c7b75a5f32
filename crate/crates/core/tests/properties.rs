//! Property suites for the structural invariants the library promises.

mod common;

use common::*;
use mobiusmodel::classifier::{
    classify_d, classify_l, construct_example, enumerate_l_affine, is_d_trivial, is_full_cycle,
    mult_match_rotation, rotation_divisor,
};
use mobiusmodel::numerics::{
    divisors, least_squares_residual, prime_factorize, root_of_unity_order,
};
use mobiusmodel::oracle::{basis, compose_rational, RationalFunction};
use mobiusmodel::{ExtComplex, FiniteBlaschkeProduct, InvarianceFamily, SelfMap};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn complex_in_box(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| Complex64::new(re, im))
}

fn unimodular() -> impl Strategy<Value = Complex64> {
    (0.0..2.0 * std::f64::consts::PI).prop_map(|t| Complex64::from_polar(1.0, t))
}

fn moebius_strategy() -> impl Strategy<Value = SelfMap> {
    (
        complex_in_box(1.0),
        complex_in_box(1.0),
        complex_in_box(1.0),
        complex_in_box(1.0),
    )
        .prop_filter_map("nondegenerate", |(a, b, cc, d)| {
            SelfMap::moebius(a, b, cc, d, &cfg()).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn root_order_conjugation_symmetric(w in unimodular()) {
        let order = root_of_unity_order(w, &cfg()).unwrap();
        let conj_order = root_of_unity_order(w.conj(), &cfg()).unwrap();
        prop_assert_eq!(order, conj_order);
    }

    #[test]
    fn compose_with_inverse_is_identity(phi in moebius_strategy()) {
        let inv = phi.inverse().unwrap();
        prop_assert!(phi.compose(&inv).is_identity(1e-8));
        prop_assert!(inv.compose(&phi).is_identity(1e-8));
    }

    #[test]
    fn tilde_is_an_involution(phi in moebius_strategy()) {
        let back = phi.tilde().unwrap().tilde().unwrap();
        prop_assert!(back.approx_eq(&phi, 1e-8));
    }

    #[test]
    fn tilde_preserves_disc_self_mapping(phi in moebius_strategy()) {
        let dual = phi.tilde().unwrap();
        prop_assert_eq!(
            phi.is_disc_self_map(&cfg()),
            dual.is_disc_self_map(&cfg())
        );
    }

    #[test]
    fn composition_acts_pointwise(
        phi in moebius_strategy(),
        psi in moebius_strategy(),
        z in complex_in_box(0.8),
    ) {
        let composite = phi.compose(&psi);
        let via_composite = composite.apply_finite(z);
        let stepwise = match psi.apply_finite(z) {
            ExtComplex::Finite(w) => phi.apply_finite(w),
            ExtComplex::Infinity => phi.apply(ExtComplex::Infinity),
        };
        prop_assert!(via_composite.chordal_distance(stepwise) < 1e-10);
    }

    #[test]
    fn rotation_multiplier_conjugation(theta_seed in 0u64..500, angle in 0.0..2.0*std::f64::consts::PI) {
        let mut rng = ChaCha8Rng::seed_from_u64(theta_seed);
        let theta = random_nonvanishing_theta(&mut rng, 6);
        let alpha = Complex64::from_polar(1.0, angle);
        prop_assert_eq!(
            mult_match_rotation(&theta, alpha).unwrap(),
            mult_match_rotation(&theta, alpha.conj()).unwrap()
        );
    }
}

#[test]
fn factorization_reconstructs_all_small_integers() {
    for n in 1u64..10_000 {
        let product: u64 = prime_factorize(n)
            .iter()
            .map(|(p, k)| p.pow(*k))
            .product();
        assert_eq!(product, n, "factorization of {n}");
    }
}

#[test]
fn divisor_lists_are_consistent() {
    for n in 1u64..500 {
        let divs = divisors(n);
        assert!(divs.first() == Some(&1) && divs.last() == Some(&n));
        assert!(divs.windows(2).all(|w| w[0] < w[1]));
        assert!(divs.iter().all(|d| n % d == 0));
    }
}

#[test]
fn least_squares_detects_exact_combinations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=12usize);
        let rows = dim + rng.gen_range(1..=8usize);
        let columns: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..rows)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        let mut target = vec![c(0.0, 0.0); rows];
        for col in &columns {
            let coeff = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            for (t, x) in target.iter_mut().zip(col) {
                *t += coeff * x;
            }
        }
        match least_squares_residual(&columns, &target, &cfg()) {
            Ok(residual) => assert!(residual <= 1e-12, "residual {residual}"),
            // Random columns may collide; conditioning refusal is acceptable.
            Err(_) => continue,
        }
    }
}

#[test]
fn blaschke_maps_disc_into_disc() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        for _ in 0..100 {
            let z = random_annulus_point(&mut rng, 0.0, 0.999);
            let value = theta.evaluate(z).unwrap();
            assert!(value.norm() < 1.0, "|θ({z})| = {} ≥ 1", value.norm());
        }
    }
}

#[test]
fn mult_at_positive_exactly_on_zero_locations() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        for zero in theta.zeros() {
            assert_eq!(theta.mult_at(zero.location), zero.multiplicity);
        }
        for _ in 0..20 {
            let probe = random_annulus_point(&mut rng, 0.0, 0.9);
            let near_zero = theta
                .zeros()
                .iter()
                .any(|z| (z.location - probe).norm() < 1e-9);
            assert_eq!(theta.mult_at(probe) > 0, near_zero);
        }
    }
}

#[test]
fn make_is_idempotent_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..50 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        let rebuilt = FiniteBlaschkeProduct::make(&theta.pairs(), &cfg()).unwrap();
        assert_eq!(theta, rebuilt);
    }
}

#[test]
fn elliptic_orders_transfer_through_tilde() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..100 {
        let n = rng.gen_range(2..=24u32);
        let phi = random_elliptic(&mut rng, n);
        let dual = phi.tilde().unwrap();
        assert_eq!(phi.order(&cfg()), Some(n), "constructed order");
        assert_eq!(dual.order(&cfg()), Some(n), "dual order");
    }
}

#[test]
fn rotation_divisor_divides_zero_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..100 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        let d = rotation_divisor(&theta).unwrap();
        assert_eq!(theta.distinct_zero_count() as u32 % d, 0);
    }
}

#[test]
fn triviality_matches_divisor() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..100 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        let d = rotation_divisor(&theta).unwrap();
        assert_eq!(is_d_trivial(&theta).unwrap(), d == 1);
        assert_eq!(
            is_full_cycle(&theta).unwrap(),
            d == theta.distinct_zero_count() as u32
        );
    }
}

#[test]
fn d_members_belong_to_l() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..40 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        let d_family = classify_d(&theta, &cfg());
        let l_family = classify_l(&theta, &cfg());
        for member in d_family.enumerated_members() {
            assert!(
                l_family.contains(member, &cfg()),
                "D member {member:?} missing from L"
            );
        }
    }
}

#[test]
fn affine_groups_are_cyclic_and_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let mut nontrivial_seen = 0;
    for _ in 0..40 {
        let theta = random_nonvanishing_theta(&mut rng, 6);
        if theta.distinct_zero_count() < 2 {
            continue;
        }
        let family = enumerate_l_affine(&theta, &cfg()).unwrap();
        let InvarianceFamily::FiniteSet {
            elements,
            cyclic_generator,
            ..
        } = &family
        else {
            panic!("expected finite set")
        };
        if elements.len() > 1 {
            nontrivial_seen += 1;
        }
        for x in elements {
            let inv = x.inverse().unwrap();
            assert!(elements.iter().any(|m| m.approx_eq(&inv, 1e-8)));
            for y in elements {
                let composite = x.compose(y);
                assert!(
                    elements.iter().any(|m| m.approx_eq(&composite, 1e-8)),
                    "affine family not closed"
                );
            }
        }
        // Cyclic: the recorded generator reaches every element.
        let generator = cyclic_generator.as_ref().expect("generator recorded");
        let mut reached = vec![generator.clone()];
        let mut acc = generator.clone();
        for _ in 1..elements.len() {
            acc = generator.compose(&acc);
            reached.push(acc.clone());
        }
        for e in elements {
            assert!(
                reached.iter().any(|m| m.approx_eq(e, 1e-8)),
                "generator does not reach {e:?}"
            );
        }
    }
    assert!(nontrivial_seen > 0, "generator mix produced no nontrivial groups");
}

#[test]
fn constructed_divisors_realized_up_to_eight() {
    for n in 1u32..=8 {
        for &d in divisors(n as u64).iter() {
            let theta = construct_example(n, d as u32, &cfg()).unwrap();
            assert_eq!(
                rotation_divisor(&theta).unwrap(),
                d as u32,
                "construct_example({n}, {d})"
            );
        }
    }
}

#[test]
fn orbit_products_realize_their_rotation_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4u32);
        let bases = rng.gen_range(1..=2usize);
        let mut base_zeros: Vec<(Complex64, u32)> = Vec::new();
        while base_zeros.len() < bases {
            let z = random_annulus_point(&mut rng, 0.15, 0.7);
            // Distinct moduli guarantee the divisor is exactly the orbit
            // length; without separation it is still a multiple of it.
            if base_zeros.iter().all(|(b, _)| (b.norm() - z.norm()).abs() > 5e-2) {
                base_zeros.push((z, rng.gen_range(1..=2)));
            }
        }
        let theta = mobiusmodel::classifier::orbit_product(&base_zeros, n, &cfg()).unwrap();
        let d = rotation_divisor(&theta).unwrap();
        assert_eq!(d % n, 0, "divisor {d} not a multiple of orbit length {n}");
        assert_eq!(d, n, "distinct moduli must pin the divisor to {n}, got {d}");
    }
}

#[test]
fn basis_length_equals_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..50 {
        let theta = random_nonvanishing_theta(&mut rng, 8);
        assert_eq!(basis(&theta).len(), theta.degree() as usize);
    }
}

#[test]
fn composition_is_pointwise_correct() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..100 {
        // Random small-degree rational: ratio of random polynomials.
        let dn = rng.gen_range(0..=3usize);
        let dd = rng.gen_range(0..=3usize);
        let num: Vec<Complex64> = (0..=dn)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut den: Vec<Complex64> = (0..=dd)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        den[0] += c(2.0, 0.0); // keep the denominator away from zero near 0
        let Ok(f) = RationalFunction::new(&num, &den) else { continue };
        let phi = random_moebius(&mut rng);
        let Ok(composed) = compose_rational(&f, &phi) else { continue };
        let mut checked = 0;
        for _ in 0..40 {
            if checked >= 20 {
                break;
            }
            let z = random_annulus_point(&mut rng, 0.05, 0.9);
            let Some(direct) = phi
                .apply_finite(z)
                .finite()
                .and_then(|w| f.eval(w))
            else {
                continue;
            };
            let Some(via) = composed.eval(z) else { continue };
            assert!(
                (direct - via).norm() <= 1e-10 * direct.norm().max(1.0),
                "pointwise mismatch at {z}"
            );
            checked += 1;
        }
    }
}
