use cdv_core::defspace::{DefSpaceMap, Sign};
use cdv_core::polycore::{rat, Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Coefficients `b_{n-2}, ..., b_0` of `(w - lambda) Q` computed by hand,
/// with `t` ordered `t_{n-3}, ..., t_0`.
fn phi_oracle(n: usize, lambda: &Rational, t: &[Rational]) -> Vec<Rational> {
    // q[i] is the coefficient of w^i in Q
    let mut q: Vec<Rational> = t.iter().rev().cloned().collect();
    q.push(lambda.clone());
    q.push(rat(1, 1));
    (0..=n - 2)
        .rev()
        .map(|i| {
            let below = if i == 0 { Rational::zero() } else { q[i - 1].clone() };
            below - lambda * &q[i]
        })
        .collect()
}

/// Coefficients `b_{n-2}, ..., b_0` of `prod (w - r)`; the roots must sum to zero.
fn coefficients_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut c = vec![rat(1, 1)];
    for r in roots {
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    let n = roots.len();
    assert!(c[n - 1].is_zero());
    (0..=n - 2).rev().map(|i| c[i].clone()).collect()
}

fn random_rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    rat(rng.gen_range(-range..=range), rng.gen_range(1..=3))
}

#[test]
fn identities_hold_for_n_2_to_8() {
    for n in 2..=8 {
        let m = DefSpaceMap::build(n).unwrap();
        assert!(m.verify_factor_identity(), "n = {n}");
        assert!(m.verify_inverse_composition(), "n = {n}");
        assert!(m.jacobian_identity().holds, "n = {n}");
        assert!(m.ramification_check(20, 7).holds(), "n = {n}");
    }
}

#[test]
fn jacobian_sign_is_minus_for_n_2_and_plus_for_3_and_5() {
    assert_eq!(DefSpaceMap::build(2).unwrap().jacobian_identity().sign, Some(Sign::Minus));
    assert_eq!(DefSpaceMap::build(3).unwrap().jacobian_identity().sign, Some(Sign::Plus));
    assert_eq!(DefSpaceMap::build(5).unwrap().jacobian_identity().sign, Some(Sign::Plus));
}

#[test]
fn composition_residues_vanish() {
    for n in 2..=6 {
        let m = DefSpaceMap::build(n).unwrap();
        assert!(m.composition_residues().iter().all(Polynomial::is_zero), "n = {n}");
    }
}

#[test]
fn phi_matches_hand_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=7 {
        let m = DefSpaceMap::build(n).unwrap();
        for _ in 0..20 {
            let lambda = random_rational(&mut rng, 9);
            let t: Vec<Rational> = (0..n - 2).map(|_| random_rational(&mut rng, 9)).collect();
            assert_eq!(m.phi_at(&lambda, &t), phi_oracle(n, &lambda, &t), "n = {n}");
        }
    }
}

#[test]
fn random_fibers_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 2..=6 {
        let m = DefSpaceMap::build(n).unwrap();
        for _ in 0..100 {
            let b: Vec<Rational> = (0..n - 1).map(|_| random_rational(&mut rng, 4)).collect();
            let fiber = m.fiber_count(&b).unwrap();
            assert!(fiber.count <= n);
            assert_eq!(fiber.count == n, fiber.discriminant_nonzero, "n = {n}, b = {b:?}");
            for p in &fiber.points {
                assert_eq!(m.phi_at(&p.lambda, &p.t), b);
            }
        }
    }
}

#[test]
fn fibers_over_split_polynomials_are_full() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 2..=6 {
        let m = DefSpaceMap::build(n).unwrap();
        for _ in 0..100 {
            // small range so that repeated roots occur
            let mut roots: Vec<Rational> = (0..n - 1).map(|_| rat(rng.gen_range(-2..=2), 1)).collect();
            let sum: Rational = roots.iter().sum();
            roots.push(-sum);
            let b = coefficients_from_roots(&roots);
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            let fiber = m.fiber_count(&b).unwrap();
            assert_eq!(fiber.count, distinct.len(), "roots {roots:?}");
            assert_eq!(fiber.discriminant_nonzero, distinct.len() == n);
            let mut lambdas: Vec<Rational> = fiber.points.iter().map(|p| p.lambda.clone()).collect();
            lambdas.sort();
            assert_eq!(lambdas, distinct);
            for p in &fiber.points {
                assert_eq!(m.phi_at(&p.lambda, &p.t), b);
            }
        }
    }
}

#[test]
fn wrong_point_length_is_rejected() {
    let m = DefSpaceMap::build(4).unwrap();
    assert!(m.fiber_count(&[rat(1, 1)]).is_err());
    assert!(DefSpaceMap::build(1).is_err());
}

#[test]
fn mutations_are_detected() {
    for n in 2..=5 {
        let m = DefSpaceMap::build(n).unwrap();
        for k in 0..m.phi().len() {
            let bumped = m.with_phi(k, m.phi()[k].clone() + Polynomial::one(m.ambient())).unwrap();
            assert!(!bumped.verify_factor_identity(), "n = {n}, component {k}");
            let flipped = m.with_phi(k, -m.phi()[k].clone()).unwrap();
            assert!(!flipped.verify_factor_identity(), "n = {n}, component {k}");
        }
        let q = m.with_q(-m.q().clone()).unwrap();
        assert!(!q.verify_factor_identity(), "n = {n}");
        assert!(!q.ramification_check(5, 1).holds(), "n = {n}");
        let jac = q.jacobian_identity();
        assert_ne!(jac.sign, m.jacobian_identity().sign, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preimages_map_back(n in 2usize..=6, lam in -20i64..=20, ts in prop::collection::vec(-20i64..=20, 4)) {
        let m = DefSpaceMap::build(n).unwrap();
        let lambda = rat(lam, 1);
        let t: Vec<Rational> = ts[..n - 2].iter().map(|&v| rat(v, 1)).collect();
        let b = m.phi_at(&lambda, &t);
        let fiber = m.fiber_count(&b).unwrap();
        let hit = fiber.points.iter().find(|p| p.lambda == lambda);
        prop_assert!(hit.is_some());
        prop_assert_eq!(&hit.unwrap().t, &t);
    }
}
