use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use screwline::algebra::{rat, ratio, Polynomial, Real};
use screwline::classical::{
    idd_density, levy_triplet, screw_from_triplet, stieltjes_string, string_solve, titchmarsh_weyl, KreinString,
    LevyTriplet, StringMass,
};
use screwline::paleywiener::{
    g_r_closed, g_r_eval, g_r_screw, g_r_tail_bound, identity_deviation, pw_sampling_gram, tan_partial_fraction,
    PWFrame,
};
use screwline::sampling;
use screwline::screw::{eval_screw, ScrewFunctionData};
use screwline::spectra::DiscreteMeasure;

fn krein_string() -> impl Strategy<Value = KreinString> {
    (prop::collection::vec((1i64..=6, 1i64..=9), 1..5), prop::option::of(1i64..=6)).prop_map(|(steps, tail)| {
        // The first mass may sit at the origin.
        let mut pos = rat(0);
        let mut masses = Vec::new();
        for (k, (gap, m)) in steps.into_iter().enumerate() {
            if k > 0 || gap > 3 {
                pos = &pos + &ratio(gap, 2);
            }
            masses.push(StringMass { position: pos.clone(), mass: ratio(m, 3) });
        }
        let length = tail.map(|t| &pos + &ratio(t, 2));
        KreinString::new(masses, length).unwrap()
    })
}

fn screw_data() -> impl Strategy<Value = ScrewFunctionData> {
    (-6i64..=6, prop::collection::btree_map(-9i64..=9, 1i64..=8, 1..5)).prop_map(|(c, atoms)| {
        let pairs: Vec<_> = atoms.into_iter().map(|(x, m)| (ratio(x, 3), ratio(m, 4))).collect();
        ScrewFunctionData::new(Real::rational(rat(0)), Real::rational(ratio(c, 3)), DiscreteMeasure::from_rationals(&pairs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strings_round_trip_through_their_spectral_function(s in krein_string()) {
        let q = titchmarsh_weyl(&s).unwrap();
        let back = stieltjes_string(&q).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(titchmarsh_weyl(&back).unwrap(), q);
    }

    #[test]
    fn string_solutions_have_unit_wronskian(s in krein_string(), x in 0i64..=40) {
        let end = s.length().cloned().unwrap_or_else(|| &s.masses().last().unwrap().position + &rat(3));
        let x = &end * &ratio(x, 40);
        let sol = string_solve(&s, &x).unwrap();
        prop_assert_eq!(sol.wronskian(), Polynomial::one());
    }

    #[test]
    fn levy_triplets_rebuild_the_screw_function(g in screw_data(), seed in any::<u64>()) {
        let back = screw_from_triplet(&levy_triplet(&g).unwrap()).unwrap();
        let mut r = sampling::rng(seed);
        for _ in 0..50 {
            let t = r.gen_range(-15.0..15.0);
            let (a, b) = (eval_screw(&g, t), eval_screw(&back, t));
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "t = {}: {} vs {}", t, a, b);
        }
    }

    #[test]
    fn gaussian_poisson_densities_are_nonnegative_and_even(a in 1i64..=8, lambda in 1i64..=8) {
        let nu = DiscreteMeasure::from_rationals(&[(rat(-1), ratio(lambda, 4)), (rat(1), ratio(lambda, 4))]).unwrap();
        let t = LevyTriplet { a: Real::rational(ratio(a, 4)), b: Real::rational(rat(0)), nu };
        for k in 0..=60 {
            let x = -6.0 + 0.2 * k as f64;
            let p = idd_density(&t, x, 40).unwrap();
            let q = idd_density(&t, -x, 40).unwrap();
            prop_assert!(p >= 0.0);
            prop_assert!((p - q).abs() <= 1e-14 * (1.0 + p), "x = {}", x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampling_gram_is_within_one_over_n_of_identity(n in 8usize..=48, r in 0.5f64..3.0) {
        let frame = PWFrame::new(r, n).unwrap();
        let dev = identity_deviation(&pw_sampling_gram(&frame));
        prop_assert!(dev <= 1.0 / n as f64, "N = {}: {}", n, dev);
    }

    #[test]
    fn tan_partial_fractions_converge_at_rate_one_over_n(n in 200usize..=800, r in 0.5f64..3.0, seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..2.0));
        let tan = (z * r).tan();
        let err = |n: usize| (tan_partial_fraction(&PWFrame::new(r, n).unwrap(), z) - tan).norm();
        let (e1, e2) = (err(n), err(2 * n));
        // err(N) = C/N + O(1/N²), so doubling N halves it.
        prop_assert!(e1 * n as f64 <= 4.0 * (1.0 + z.norm()), "N·err = {}", e1 * n as f64);
        prop_assert!((e1 / e2 - 2.0).abs() < 0.1, "ratio {}", e1 / e2);
    }

    #[test]
    fn g_r_from_the_measure_matches_the_series(n in 20usize..=200, r in 0.5f64..3.0, seed in any::<u64>()) {
        let frame = PWFrame::new(r, n).unwrap();
        let screw = g_r_screw(&frame);
        let bound = g_r_tail_bound(&frame);
        let mut rng = sampling::rng(seed);
        for _ in 0..20 {
            let t = rng.gen_range(-6.0 * r..6.0 * r);
            let series = g_r_eval(&frame, t);
            let measure = eval_screw(&screw, t);
            prop_assert!((measure - Complex64::new(series, 0.0)).norm() < 1e-9 * (1.0 + series.abs()), "t = {}", t);
            prop_assert!((series - g_r_closed(r, t)).abs() <= bound, "t = {}", t);
        }
    }
}
