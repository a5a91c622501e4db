use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use screwline::algebra::poly::float_poly_close;
use screwline::algebra::{ExactComplex, MatrixPolynomial, Polynomial};
use screwline::canonical::{
    factor_list, factorize, fundamental_solution, transfer_matrix, validate_transfer, Hamiltonian, Projector,
};
use screwline::debranges::{gram_schmidt_basis, random_hb_polynomial, random_symmetric_hb, HermiteBiehlerFrame};
use screwline::sampling;
use screwline::screw::kernel_g;
use screwline::weyl::{
    check_constraints, inverse_weyl_float, l2h_inner, screw_line_s, weyl_transform, ModelSpace, RowPair, StepVector,
};

fn frame(seed: u64, n: usize, symmetric: bool) -> HermiteBiehlerFrame {
    let mut r = sampling::rng(seed);
    let e = if symmetric {
        random_symmetric_hb(&mut r, n)
    } else {
        // Normalized so that E(0) = −i, hence W(0) = I.
        let e = random_hb_polynomial(&mut r, n);
        e.scale(&(&ExactComplex::from_ints(0, -1) / &e.coeff(0)))
    };
    HermiteBiehlerFrame::new(e).unwrap()
}

fn transfer(seed: u64, n: usize, symmetric: bool) -> MatrixPolynomial {
    transfer_matrix(&frame(seed, n, symmetric)).unwrap()
}

fn projector_is_rank_one(p: &Projector) -> bool {
    match p {
        Projector::Exact(m) => {
            let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
            det.is_zero() && !m[0][0].is_negative() && !m[1][1].is_negative() && m[0][1] == m[1][0]
        }
        Projector::Float(m) => {
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            det.abs() < 1e-12 && m[0][0] >= 0.0 && m[1][1] >= 0.0 && (m[0][0] + m[1][1] - 1.0).abs() < 1e-12
        }
    }
}

fn breakpoints(h: &Hamiltonian) -> Vec<BigRational> {
    let mut t = BigRational::zero();
    let mut out = vec![t.clone()];
    for s in h.segments() {
        t = &t + &s.length;
        out.push(t.clone());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transfer_matrices_are_j_contractive(seed in any::<u64>(), n in 1usize..=6, symmetric in any::<bool>()) {
        let w = transfer(seed, n, symmetric);
        prop_assert_eq!(w.det(), Polynomial::one());
        let v = validate_transfer(&w, 20, seed);
        prop_assert!(v.pass, "{:?}", v.reason);
    }

    #[test]
    fn factorization_reproduces_the_transfer_matrix(seed in any::<u64>(), n in 1usize..=6, symmetric in any::<bool>()) {
        let w = transfer(seed, n, symmetric);
        let h = factorize(&w).unwrap();
        let ends = breakpoints(&h);
        for t in &ends {
            prop_assert_eq!(fundamental_solution(&h, t).unwrap().det(), Polynomial::one());
        }
        prop_assert_eq!(fundamental_solution(&h, ends.last().unwrap()).unwrap(), w.clone());
        prop_assert_eq!(factor_list(&w).unwrap().len(), w.degree());
    }

    #[test]
    fn segments_are_indivisible_and_alternate(seed in any::<u64>(), n in 1usize..=6, symmetric in any::<bool>()) {
        let h = factorize(&transfer(seed, n, symmetric)).unwrap();
        for s in h.segments() {
            prop_assert!(s.length > BigRational::zero());
            prop_assert!(projector_is_rank_one(&s.projector), "{:?}", s.projector);
        }
        for pair in h.segments().windows(2) {
            prop_assert!(pair[0].theta != pair[1].theta);
            let (a, b) = (pair[0].projector.to_f64(), pair[1].projector.to_f64());
            prop_assert!((0..2).any(|i| (0..2).any(|j| (a[i][j] - b[i][j]).abs() > 1e-12)));
        }
        let mut r = sampling::rng(seed);
        let total = h.total_length();
        let len = screwline::algebra::rat_to_f64(&total);
        for _ in 0..10 {
            let t = r.gen_range(0.0..len);
            let m = h.matrix_at(t).unwrap();
            prop_assert!((m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_weyl_inverts_and_is_isometric(seed in any::<u64>(), n in 1usize..=5) {
        let frame = frame(seed, n, true);
        let h = factorize(&transfer_matrix(&frame).unwrap()).unwrap();
        let basis = gram_schmidt_basis(&frame).unwrap();
        let inv: Vec<StepVector<Complex64>> = basis
            .iter()
            .map(|f| inverse_weyl_float(&h, &frame, &f.to_float(), RowPair::CD).unwrap())
            .collect();
        for (i, x) in inv.iter().enumerate() {
            check_constraints(&h, x).unwrap();
            let back = weyl_transform(&h, x, RowPair::CD).unwrap().to_float();
            prop_assert!(float_poly_close(&back, &basis[i].to_float(), 1e-8), "i = {}", i);
            for (j, y) in inv.iter().enumerate() {
                let v = l2h_inner(&h, x, y).unwrap().to_c64();
                let e = if i == j { 1.0 } else { 0.0 };
                prop_assert!((v - e).norm() < 1e-8, "<{}, {}> = {}", i, j, v);
            }
        }
    }

    #[test]
    fn screw_line_gram_is_the_screw_kernel(seed in any::<u64>(), n in 1usize..=5, symmetric in any::<bool>()) {
        let frame = frame(seed, n, symmetric);
        prop_assume!(frame.a().degree() == Some(n));
        let space = ModelSpace::new(frame).unwrap();
        let g = space.screw_data();
        let mut r = sampling::rng(seed);
        for _ in 0..20 {
            let (t, s) = (r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0));
            let lhs = screw_line_s(&space, t).inner(&screw_line_s(&space, s));
            let rhs = kernel_g(&g, t, s) * std::f64::consts::PI;
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "({}, {}): {} vs {}", t, s, lhs, rhs);
        }
    }
}

#[test]
fn example_model_space_gram_identity_on_a_grid() {
    let space = ModelSpace::example_e0();
    let g = screwline::screw::ScrewFunctionData::example_g0();
    let grid = screwline::screw::uniform_grid(-6.0, 6.0, 41);
    for &t in &grid {
        for &s in &grid {
            let lhs = screw_line_s(&space, t).inner(&screw_line_s(&space, s));
            let rhs = kernel_g(&g, t, s) * std::f64::consts::PI;
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "({t}, {s})");
        }
    }
}
