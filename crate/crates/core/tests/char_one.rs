use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropwitt_core::char_one::{
    check_cocycle, check_symmetric_multi, deform_add, deform_partial_sum, deform_sum, entropy, positivity_probe,
    ChiHom, ConstantWeight, DeformContext, Frac, MaxPlusElem,
};

fn e(l: f64) -> MaxPlusElem {
    MaxPlusElem::from_log(l).unwrap()
}

fn ctx(t: f64) -> DeformContext {
    DeformContext::new(t).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn deformed_addition_is_commutative_and_associative(
        a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, t in 0.05..5.0f64,
    ) {
        let k = ctx(t);
        let (x, y, z) = (e(a), e(b), e(c));
        prop_assert_eq!(deform_add(x, y, k), deform_add(y, x, k));
        let l = deform_add(deform_add(x, y, k), z, k).logval();
        let r = deform_add(x, deform_add(y, z, k), k).logval();
        prop_assert!(close(l, r, 1e-12));
    }

    #[test]
    fn multiplication_distributes(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, t in 0.05..5.0f64) {
        let k = ctx(t);
        let (x, y, z) = (e(a), e(b), e(c));
        let l = x.mul(deform_add(y, z, k)).logval();
        let r = deform_add(x.mul(y), x.mul(z), k).logval();
        prop_assert!(close(l, r, 1e-12));
    }

    #[test]
    fn closed_form_in_rho_coordinates(a in -3.0..3.0f64, b in -3.0..3.0f64, t in 0.05..10.0f64) {
        let k = ctx(t);
        let s = deform_add(k.rho_pow(a), k.rho_pow(b), k);
        let c = (a.exp() + b.exp()).ln();
        prop_assert!((k.rho_exponent(s) - c).abs() < 1e-12 * (1.0 + c.abs()));
    }

    #[test]
    fn partial_sums_bounded_by_limit(a in -3.0..3.0f64, b in -3.0..3.0f64, n in 1u32..64, t in 0.1..10.0f64) {
        let k = ctx(t);
        let s = deform_partial_sum(k.rho_pow(a), k.rho_pow(b), n, k).unwrap();
        let lim = deform_add(k.rho_pow(a), k.rho_pow(b), k);
        prop_assert!(s.logval() <= lim.logval() + 1e-12);
    }

    #[test]
    fn entropy_is_symmetric(k in 0u32..=1000) {
        let a = k as f64 / 1000.0;
        prop_assert!((entropy(a).unwrap() - entropy(1.0 - a).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn n_fold_unit_sum_is_n_to_the_t() {
    for t in [0.1, 1.0, 10.0] {
        for n in 1..=100u32 {
            let s = deform_sum((0..n).map(|_| MaxPlusElem::ONE), ctx(t));
            let expect = (n as f64).powf(t);
            assert!((s.value() - expect).abs() <= 1e-12 * expect, "n={n} T={t}");
        }
    }
}

fn random_open_frac(rng: &mut impl Rng) -> Frac {
    let d = rng.gen_range(2u64..=60);
    Ratio::new(rng.gen_range(1..d), d)
}

#[test]
fn cocycle_and_symmetry_for_prime_assigned_characters() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<(Frac, Frac)> = (0..200).map(|_| (random_open_frac(&mut rng), random_open_frac(&mut rng))).collect();
    let rep = check_cocycle(&ChiHom::entropy(1.0), &samples).unwrap();
    assert!(rep.cocycle < 1e-12 && rep.symmetry < 1e-12, "{rep:?}");
    for _ in 0..20 {
        let chi = ChiHom::from_primes([2u64, 3, 5, 7, 11, 13].map(|p| (p, rng.gen_range(-3.0..3.0)))).unwrap();
        let rep = check_cocycle(&chi, &samples).unwrap();
        assert!(rep.cocycle < 1e-12 && rep.symmetry < 1e-12, "{rep:?}");
    }
}

#[test]
fn constant_weight_breaks_the_cocycle() {
    let samples = [(Ratio::new(1, 2), Ratio::new(1, 3))];
    let rep = check_cocycle(&ConstantWeight { log_c: 0.5 }, &samples).unwrap();
    assert!(rep.cocycle > 0.1);
}

#[test]
fn three_part_symmetry_and_partition() {
    let chi = ChiHom::from_primes([(2, 1.3), (3, -0.4), (5, 2.0)]).unwrap();
    let alphas = [Ratio::new(1, 6), Ratio::new(1, 3), Ratio::new(1, 2)];
    let parts = vec![vec![0, 2], vec![1]];
    let rep = check_symmetric_multi(&chi, &alphas, Some(&parts)).unwrap();
    assert!(rep.permutation < 1e-12);
    assert!(rep.partition.unwrap() < 1e-12);
}

#[test]
fn positivity_probe_separates_entropy_from_others() {
    let bad = ChiHom::from_primes([(2, 1.0), (3, 10.0)]).unwrap();
    let w = positivity_probe(&bad, 12).expect("witness");
    assert!(w.log_w < 0.0);
    assert!(positivity_probe(&ChiHom::entropy(1.0), 12).is_none());
}
