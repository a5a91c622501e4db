use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use screwline::algebra::{
    ab_join, ab_split, hb_test, partial_fractions, ratio, roots, sharp, ExactComplex, Polynomial, Real,
    Scalar,
    RationalFunction, DEFAULT_ROOT_TOL,
};
use screwline::debranges::{moments, random_hb_polynomial, HermiteBiehlerFrame};
use screwline::sampling;
use screwline::spectra::{
    cayley_q_to_theta, cayley_theta_to_q, level_set_masses, measure_from_q, q_from_measure, theta_from_e, theta_to_e,
    DiscreteMeasure, NevanlinnaData,
};

fn gaussian_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..=9, -9i64..=9), 1..7).prop_map(|c| Polynomial::from_int_pairs(&c))
}

/// Distinct zeros on the quarter lattice.
fn lattice_zeros(max: usize) -> impl Strategy<Value = Vec<ExactComplex>> {
    prop::collection::btree_set((-10i64..=10, -10i64..=10), 1..=max)
        .prop_map(|s| s.into_iter().map(|(a, b)| ExactComplex::new(ratio(a, 4), ratio(b, 4))).collect())
}

fn nevanlinna() -> impl Strategy<Value = NevanlinnaData> {
    (0i64..=3, -6i64..=6, prop::collection::btree_map(-12i64..=12, 1i64..=8, 1..5)).prop_map(|(a, b, atoms)| {
        let pairs: Vec<_> = atoms.into_iter().map(|(x, m)| (ratio(x, 3), ratio(m, 2))).collect();
        NevanlinnaData::new(
            Real::rational(ratio(a, 2)),
            Real::rational(ratio(b, 5)),
            DiscreteMeasure::from_rationals(&pairs).unwrap(),
        )
        .unwrap()
    })
}

fn coeff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len().max(b.len());
    let at = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or_default();
    (0..n).map(|k| (at(a, k) - at(b, k)).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sharp_is_an_involutive_homomorphism(p in gaussian_poly(), q in gaussian_poly()) {
        prop_assert_eq!(sharp(&sharp(&p)), p.clone());
        prop_assert_eq!(sharp(&(&p * &q)), &sharp(&p) * &sharp(&q));
        prop_assert_eq!(sharp(&(&p + &q)), &sharp(&p) + &sharp(&q));
    }

    #[test]
    fn a_minus_i_b_is_e(e in gaussian_poly()) {
        let (a, b) = ab_split(&e);
        prop_assert!(a.is_real() && b.is_real());
        prop_assert_eq!(&a - &b.scale(&ExactComplex::i()), e.clone());
        prop_assert_eq!(ab_join(&a, &b), e);
    }

    #[test]
    fn roots_re_expand_to_the_monic_polynomial(zeros in lattice_zeros(7), lead in (1i64..=5, -5i64..=5)) {
        let p = Polynomial::from_roots(&zeros).scale(&ExactComplex::from_ints(lead.0, lead.1));
        let found = roots(&p, DEFAULT_ROOT_TOL).unwrap();
        prop_assert_eq!(found.len(), zeros.len());
        let rebuilt = found
            .iter()
            .fold(vec![Complex64::new(1.0, 0.0)], |acc, r| {
                let mut next = vec![Complex64::default(); acc.len() + 1];
                for (k, c) in acc.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                next
            });
        let lc = p.to_float().coeff(zeros.len());
        let monic: Vec<Complex64> = p.to_float().coeffs().iter().map(|c| c / lc).collect();
        let scale = monic.iter().map(|c| c.norm()).fold(1.0, f64::max);
        prop_assert!(coeff_distance(&rebuilt, &monic) <= 1e-10 * scale);
    }

    #[test]
    fn hermite_biehler_polynomials_are_contractive(seed in any::<u64>(), n in 1usize..=6, p in gaussian_poly()) {
        let mut r = sampling::rng(seed);
        for e in [random_hb_polynomial(&mut r, n), p] {
            if e.degree().unwrap_or(0) == 0 || !hb_test(&e, 0.0).unwrap() {
                continue;
            }
            let (ef, es) = (e.to_float(), sharp(&e).to_float());
            for _ in 0..100 {
                let z = sampling::upper_half_plane(&mut r);
                prop_assert!((es.eval(&z) / ef.eval(&z)).norm() < 1.0, "z = {}", z);
            }
        }
    }

    #[test]
    fn partial_fractions_reconstruct(poles in lattice_zeros(5), num in gaussian_poly(), seed in any::<u64>()) {
        let den = Polynomial::from_roots(&poles);
        let rf = RationalFunction::new(num, den).unwrap();
        let pf = partial_fractions(&rf, DEFAULT_ROOT_TOL).unwrap();
        let pole_f: Vec<Complex64> = poles.iter().map(|p| p.to_c64()).collect();
        let mut r = sampling::rng(seed);
        let mut probes = 0;
        while probes < 20 {
            let z = Complex64::new(r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0));
            if pole_f.iter().any(|p| (z - p).norm() < 0.1) {
                continue;
            }
            probes += 1;
            let want = rf.eval_c64(z);
            prop_assert!((pf.eval(z) - want).norm() < 1e-10 * (1.0 + want.norm()), "z = {}", z);
        }
    }

    #[test]
    fn herglotz_functions_map_the_upper_half_plane_to_itself(d in nevanlinna(), seed in any::<u64>()) {
        let q = q_from_measure(&d).unwrap();
        let mut r = sampling::rng(seed);
        for _ in 0..100 {
            let z = sampling::upper_half_plane(&mut r);
            let v = q.eval_c64(z);
            prop_assert!(v.im >= -1e-12 * (1.0 + v.norm()), "Q({}) = {}", z, v);
            prop_assert!((v - d.eval(z)).norm() < 1e-9 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn cayley_transforms_are_mutually_inverse(d in nevanlinna()) {
        let q = q_from_measure(&d).unwrap();
        let theta = cayley_q_to_theta(&q).unwrap();
        prop_assert_eq!(cayley_theta_to_q(&theta).unwrap(), q);
    }

    #[test]
    fn inner_functions_are_unimodular_on_the_line(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = sampling::rng(seed);
        let e = random_hb_polynomial(&mut r, n);
        let theta = theta_from_e(&e).unwrap();
        for _ in 0..50 {
            let z = sampling::upper_half_plane(&mut r);
            prop_assert!(theta.eval_c64(z).norm() < 1.0);
            let x = Complex64::new(r.gen_range(-10.0..10.0), 0.0);
            prop_assert!((theta.eval_c64(x).norm() - 1.0).abs() < 1e-10);
        }
        let back = theta_to_e(&theta).unwrap();
        prop_assert_eq!(theta_from_e(&back).unwrap(), theta);
    }

    #[test]
    fn measure_of_the_herglotz_function_is_the_input(d in nevanlinna()) {
        let back = measure_from_q(&q_from_measure(&d).unwrap()).unwrap();
        prop_assert!((back.a.to_f64() - d.a.to_f64()).abs() < 1e-12);
        prop_assert!((back.b.to_f64() - d.b.to_f64()).abs() < 1e-12);
        let (x, y) = (back.measure.to_f64_pairs(), d.measure.to_f64_pairs());
        prop_assert_eq!(x.len(), y.len());
        for ((p, m), (p2, m2)) in x.iter().zip(&y) {
            prop_assert!((p - p2).abs() < 1e-12 && (m - m2).abs() < 1e-12);
        }
        prop_assert_eq!(back, d);
    }

    #[test]
    fn level_set_mass_matches_the_zeroth_moment(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = sampling::rng(seed);
        let e = random_hb_polynomial(&mut r, n);
        let frame = HermiteBiehlerFrame::new(e.clone()).unwrap();
        let mu = level_set_masses(&e).unwrap();
        let ef = e.to_float();
        let weighted: f64 = mu
            .to_f64_pairs()
            .iter()
            .map(|&(g, m)| m / ef.eval(&Complex64::new(g, 0.0)).norm_sqr())
            .sum();
        let m0 = moments(&frame).moments[0].to_f64();
        prop_assert!((weighted - m0).abs() < 1e-10 * m0.max(1.0), "{} vs {}", weighted, m0);
    }
}

#[test]
fn level_set_of_a_unimodular_polynomial_is_its_zeroth_moment() {
    let frame = HermiteBiehlerFrame::example_e0();
    let total = level_set_masses(frame.e()).unwrap().total_mass();
    assert_eq!(total, moments(&frame).moments[0]);
}
