//! End-to-end verification runs for the g₀ example, the Paley–Wiener family
//! and the classical identities.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use super::json::{measure_to_json, RealJson, StringJson};
use super::report::VerificationReport;
use crate::algebra::{rat, ratio, Angle, ExactComplex, FloatPoly, Number, PiRational, Polynomial, Real};
use crate::canonical::{example_w0, factorize, fundamental_solution, Hamiltonian};
use crate::classical::{
    idd_charfn_check, idd_density, levy_triplet, mean_periodic_checks, q_substitute, stieltjes_string, string_solve,
    titchmarsh_weyl, KreinString, StringMass,
};
use crate::debranges::{
    e0, extension_eigenbasis, gram_schmidt_basis, inner_product, inner_product_elements, kernel_ab, kernel_moment,
    membership_angle, moments, s_theta_in_space, HermiteBiehlerFrame,
};
use crate::error::Result;
use crate::paleywiener::{
    fundamental_residual, g_r_closed, g_r_eval, g_r_laplace_check, g_r_screw, g_r_tail_bound, identity_deviation,
    pw_basis, pw_gram, pw_kernel, pw_sampling_gram, pw_weyl_is_fourier, tan_partial_fraction, PWFrame, PwVector,
};
use crate::quad;
use crate::sampling;
use crate::screw::{eval_screw, kernel_g, laplace_check, pd_check, uniform_grid, ScrewFunctionData};
use crate::spectra::{example_q0, level_set_masses, measure_from_q, DiscreteMeasure};
use crate::weyl::{
    diagram_check, direction_vectors, inverse_weyl, l2h_inner, phi_basis_gram, screw_line_s, weyl_transform,
    ModelSpace, RowPair, StepVector,
};

/// Shared options of the verification runs.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOptions {
    pub seed: u64,
    /// Replaces the tolerance of every closed-form residual when set. Checks
    /// limited by truncation keep their own bounds.
    pub tol: Option<f64>,
    pub r: f64,
    pub trunc: usize,
    pub grid: usize,
    pub range: (f64, f64),
    /// Random test functions for the diagram checks.
    pub samples: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { seed: 0, tol: None, r: 1.0, trunc: 2000, grid: 50, range: (-6.0, 6.0), samples: 20 }
    }
}

impl PipelineOptions {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn g0() -> ScrewFunctionData {
    ScrewFunctionData::example_g0()
}

fn pi_q(n: i64, d: i64) -> Number {
    Number::exact(ExactComplex::real(ratio(n, d)), 1)
}

/// The θ = π/2 eigenbasis of `H(E₀)` as exact scaled polynomials, ordered by eigenvalue.
fn eigenbasis_e0(frame: &HermiteBiehlerFrame) -> Result<Vec<crate::debranges::ScaledPoly>> {
    let eb = extension_eigenbasis(frame, &Angle::half_pi())?;
    eb.normalized
        .into_iter()
        .map(|f| f.as_exact().cloned().ok_or_else(|| crate::Error::Unsupported("inexact eigenbasis".into())))
        .collect()
}

fn spectral_checks(rep: &mut VerificationReport) {
    let expect = DiscreteMeasure::from_rationals(&[(rat(-1), ratio(1, 2)), (rat(0), rat(1)), (rat(1), ratio(1, 2))])
        .expect("valid measure");
    match measure_from_q(&example_q0()) {
        Ok(d) => {
            let ok = d.measure == expect && d.a == Real::rational(rat(0)) && d.b == Real::rational(rat(0));
            rep.exact("spectral measure of Q0", "Herglotz representation of Q0", ok)
                .with_value(json!(measure_to_json(&d.measure)));
        }
        Err(e) => {
            rep.error("spectral measure of Q0", "Herglotz representation of Q0", &e);
        }
    }
    let masses = DiscreteMeasure::from_rationals(&[(rat(-1), ratio(1, 2)), (rat(0), rat(1)), (rat(1), ratio(1, 2))])
        .expect("valid measure")
        .scale(&Real::pi_multiple(rat(1)));
    match level_set_masses(&e0()) {
        Ok(m) => {
            rep.exact("level-set masses of E0", "level set of Theta0 = E0#/E0", m == masses)
                .with_value(json!(measure_to_json(&m)));
        }
        Err(e) => {
            rep.error("level-set masses of E0", "level set of Theta0 = E0#/E0", &e);
        }
    }
}

fn de_branges_checks(rep: &mut VerificationReport, seed: u64, tol: &dyn Fn(f64) -> f64) {
    let f = HermiteBiehlerFrame::example_e0();
    let p = |k: usize| Polynomial::monomial(ExactComplex::from(1), k);
    let table = [[2, 0, 1], [0, 1, 0], [1, 0, 1]];
    let ok = (0..3).all(|i| (0..3).all(|j| inner_product(&f, &p(i), &p(j)).ok() == Some(pi_q(table[i][j], 1))));
    rep.exact("inner-product table of H(E0)", "monomial Gram matrix of H(E0)", ok)
        .with_value(json!({"pi_multiple": [["2", "0", "1"], ["0", "1", "0"], ["1", "0", "1"]]}));

    let gs = gram_schmidt_basis(&f).map(|q| {
        let expect = [
            (Polynomial::from_ints(&[1]), PiRational::new(ratio(1, 2), -1)),
            (Polynomial::from_ints(&[0, 1]), PiRational::new(rat(1), -1)),
            (Polynomial::from_ints(&[-1, 0, 2]), PiRational::new(ratio(1, 2), -1)),
        ];
        q.len() == 3
            && expect.iter().enumerate().all(|(k, (poly, r))| {
                let Some(s) = q[k].as_exact() else { return false };
                let lead = s.poly.leading().expect("nonzero").re.clone() / poly.leading().expect("nonzero").re.clone();
                s.poly.scale_rational(&(rat(1) / &lead)) == *poly
                    && PiRational::rational(&lead * &lead) * s.scale.radicand().clone() == *r
            })
            && (0..3).all(|i| {
                (0..3).all(|j| {
                    let want = if i == j { Number::exact(ExactComplex::from(1), 0) } else { Number::zero() };
                    inner_product_elements(&f, &q[i], &q[j]).ok() == Some(want)
                })
            })
    });
    rep.from_exact("Gram-Schmidt basis of H(E0)", "orthonormalized monomials 1, z, z^2 in H(E0)", gs);

    let t = moments(&f);
    let ok = t.moments.first() == Some(&Real::pi_multiple(rat(2)))
        && t.hankel.get(2) == Some(&Real::Exact(PiRational::new(rat(1), 3)));
    rep.exact("moments of E0", "moment m0 and Hankel determinant H2 of the weights mu/|E0|^2", ok)
        .with_value(json!({"m0": RealJson::from_domain(&t.moments[0]), "H2": t.hankel.get(2).map(RealJson::from_domain)}));

    let mut r = sampling::rng(seed);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let (z, w) = (sampling::complex_box(&mut r), sampling::complex_box(&mut r));
        let k1 = kernel_ab(&f, z, w);
        worst = match kernel_moment(&f, z, w) {
            Ok(k2) => worst.max((k1 - k2).norm() / (1.0 + k1.norm())),
            Err(_) => f64::INFINITY,
        };
    }
    rep.numeric("reproducing kernel forms", "reproducing kernel of H(E0): (A,B) form vs bordered determinant", worst, tol(1e-10));

    let angles = [Angle::zero(), Angle::PiMultiple(ratio(1, 4)), Angle::half_pi(), Angle::PiMultiple(ratio(3, 4))];
    let members: Vec<bool> = angles.iter().map(|a| s_theta_in_space(&f, a)).collect();
    let ok = membership_angle(&f) == Angle::zero() && members == [true, false, false, false];
    rep.exact("S_theta membership", "S_theta in H(E0) only for theta = 0", ok);

    let eb = eigenbasis_e0(&f).map(|basis| {
        let unit = (0..3).all(|i| {
            let fi = crate::debranges::FramePoly::Exact(basis[i].clone());
            inner_product_elements(&f, &fi, &fi).ok() == Some(Number::exact(ExactComplex::from(1), 0))
        });
        // F/E at the eigenvalue is −i·√(value) with value = 2/π at ±1 and 1/π at 0.
        let boundary = [(1usize, 0i64, PiRational::new(rat(1), -1)), (0, -1, PiRational::new(rat(2), -1)), (2, 1, PiRational::new(rat(2), -1))]
            .iter()
            .all(|(k, g, sq)| {
                let z = ExactComplex::from(*g);
                let (v, s) = basis[*k].eval_exact(&z);
                let ratio = &v / &f.e().eval(&z);
                let u = &ratio / &ExactComplex::from_ints(0, -1);
                u.is_real() && u.re > rat(0) && PiRational::rational(&u.re * &u.re) * s.radicand().clone() == *sq
            });
        unit && boundary
    });
    rep.from_exact("theta = pi/2 eigenbasis", "eigenfunctions F0, F1, F-1 of the self-adjoint extension M_{pi/2}", eb);
}

fn h0_rows(t: &num_rational::BigRational) -> crate::algebra::MatrixPolynomial {
    let poly = Polynomial::from_rationals;
    let z1 = |c: num_rational::BigRational| poly(&[rat(0), c]);
    let (a, b, c, d) = if *t < ratio(1, 2) {
        (Polynomial::one(), Polynomial::zero(), z1(-t.clone()), Polynomial::one())
    } else if *t < ratio(9, 2) {
        (Polynomial::one(), z1(t - ratio(1, 2)), z1(ratio(-1, 2)), poly(&[rat(1), rat(0), (rat(1) - rat(2) * t) / rat(4)]))
    } else {
        (
            poly(&[rat(1), rat(0), rat(18) - rat(4) * t]),
            z1(rat(4)),
            poly(&[rat(0), -(t - rat(4)), rat(0), rat(2) * t - rat(9)]),
            poly(&[rat(1), rat(0), rat(-2)]),
        )
    };
    crate::algebra::MatrixPolynomial::new(a, b, c, d)
}

fn canonical_checks(rep: &mut VerificationReport) {
    let h0 = Hamiltonian::example_h0();
    match factorize(&example_w0()) {
        Ok(h) => {
            rep.exact("factorization of W0", "Hamiltonian H0 of the transfer matrix W0", h == h0)
                .with_value(json!(super::json::HamiltonianJson::from_domain(&h)));
        }
        Err(e) => {
            rep.error("factorization of W0", "Hamiltonian H0 of the transfer matrix W0", &e);
        }
    }
    rep.from_exact(
        "fundamental solution at t = 5",
        "fundamental solution W(5, z) of H0",
        fundamental_solution(&h0, &rat(5)).map(|w| w == example_w0()),
    );
    let ok = [ratio(1, 4), rat(2), ratio(19, 4)]
        .iter()
        .map(|t| fundamental_solution(&h0, t).map(|w| w == h0_rows(t)))
        .collect::<Result<Vec<bool>>>()
        .map(|v| v.into_iter().all(|b| b));
    rep.from_exact("intermediate fundamental solutions", "W(t, z) of H0 at t = 1/4, 2, 19/4", ok);
}

fn weyl_checks(rep: &mut VerificationReport, opts: &PipelineOptions) {
    let h = Hamiltonian::example_h0();
    let frame = HermiteBiehlerFrame::example_e0();
    let images = direction_vectors(&h).and_then(|fs| {
        let want = [
            (Polynomial::from_rationals(&[ratio(1, 2)]), -1),
            (Polynomial::from_ints(&[0, -2]), -1),
            (Polynomial::from_rationals(&[ratio(1, 2), rat(0), rat(-1)]), -1),
        ];
        let mut ok = fs.len() == 3;
        for (f, w) in fs.iter().zip(&want) {
            ok &= weyl_transform(&h, f, RowPair::CD)?.as_pi_poly().as_ref() == Some(w);
        }
        Ok(ok)
    });
    rep.from_exact("Weyl images of the unit classes", "Weyl transform of the direction vectors of H0", images);

    let inv = eigenbasis_e0(&frame).and_then(|basis| {
        let inv: Vec<StepVector> = basis.iter().map(|f| inverse_weyl(&h, &frame, f, RowPair::CD)).collect::<Result<_>>()?;
        let mut ok = true;
        for (i, x) in inv.iter().enumerate() {
            for (j, y) in inv.iter().enumerate() {
                let want = if i == j { Number::from_pi_rational(&PiRational::one()) } else { Number::zero() };
                ok &= l2h_inner(&h, x, y)? == want;
            }
            let back = weyl_transform(&h, x, RowPair::CD)?;
            ok &= back.scale == basis[i].scale && back.poly == basis[i].poly;
        }
        Ok(ok)
    });
    rep.from_exact("inverse Weyl images", "inverse Weyl images of the eigenbasis of H(E0), orthonormal in L2(H0)", inv);

    let space = ModelSpace::example_e0();
    let g = g0();
    let grid = uniform_grid(-6.0, 6.0, 20);
    let mut worst = 0.0_f64;
    for &t in &grid {
        let st = screw_line_s(&space, t);
        for &s in &grid {
            worst = worst.max((st.inner(&screw_line_s(&space, s)) - PI * kernel_g(&g, t, s)).norm());
        }
    }
    rep.numeric("screw-line Gram identity", "screw line of g0 in the model space of E0 vs pi*G_g0", worst, opts.tol(1e-12));

    match diagram_check(&space, &space.screw_data(), opts.samples, opts.seed) {
        Ok(d) => {
            for leg in &d.legs {
                rep.numeric(&format!("diagram: {}", leg.name), "commutative diagram of the model space of E0", leg.residual, opts.tol(1e-6))
                    .with_value(json!({"samples": d.samples}));
            }
        }
        Err(e) => {
            rep.error("diagram", "commutative diagram of the model space of E0", &e);
        }
    }
    match phi_basis_gram(&space, &space.screw_data(), opts.seed) {
        Ok(p) => {
            rep.numeric("test-function Gram matrix", "Gram matrix of the test functions phi_k under G_g0", p.deviation, opts.tol(1e-6))
                .with_value(json!({"constant": p.constant, "kernel_constant": p.kernel_constant}));
        }
        Err(e) => {
            rep.error("test-function Gram matrix", "Gram matrix of the test functions phi_k under G_g0", &e);
        }
    }
}

fn screw_checks(rep: &mut VerificationReport, opts: &PipelineOptions) {
    let g = g0();
    let grid = uniform_grid(opts.range.0, opts.range.1, opts.grid);
    let pd = pd_check(&g, &grid, opts.tol(1e-9));
    rep.numeric("positive definiteness of G_g0", "Gram matrix of the kernel G_g0", (-pd.min_eigenvalue).max(0.0), opts.tol(1e-9))
        .with_value(json!({"min_eigenvalue": pd.min_eigenvalue, "points": opts.grid}));
    let q0 = example_q0();
    let worst = [Complex64::new(0.0, 2.0), Complex64::new(1.0, 1.0), Complex64::new(-1.0, 2.0)]
        .iter()
        .map(|&z| laplace_check(&g, &q0, z, 80.0))
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max));
    rep.from_result("Laplace transform of g0", "Laplace transform of g0 vs -iQ0(z)/z^2", worst, opts.tol(1e-8));
}

fn q0_small() -> Result<crate::algebra::RationalFunction> {
    q_substitute(&example_q0())
}

fn string_checks(rep: &mut VerificationReport) {
    let expect = KreinString::new(
        vec![StringMass { position: rat(0), mass: ratio(1, 2) }, StringMass { position: rat(4), mass: ratio(1, 2) }],
        None,
    )
    .expect("valid string");
    let s = q0_small().and_then(|q| stieltjes_string(&q).map(|s| (q, s)));
    match s {
        Ok((q, s)) => {
            rep.exact("Krein string of q0", "Stieltjes continued fraction of q0(z) = Q0(sqrt z)/sqrt z", s == expect)
                .with_value(json!(StringJson::from_domain(&s)));
            let sol = string_solve(&s, &rat(4)).map(|x| x.phi == Polynomial::from_ints(&[1, -2]) && x.psi == Polynomial::from_ints(&[4]));
            rep.from_exact("string solutions at x = 4", "solutions phi(4, lambda), psi(4, lambda) of the string of q0", sol);
            rep.from_exact("Titchmarsh-Weyl round trip", "Titchmarsh-Weyl function of the string of q0", titchmarsh_weyl(&s).map(|t| t == q));
        }
        Err(e) => {
            rep.error("Krein string of q0", "Stieltjes continued fraction of q0(z) = Q0(sqrt z)/sqrt z", &e);
        }
    }
}

fn levy_checks(rep: &mut VerificationReport, opts: &PipelineOptions) {
    let g = g0();
    match levy_triplet(&g) {
        Ok(t) => {
            let nu = DiscreteMeasure::from_rationals(&[(rat(-1), ratio(1, 2)), (rat(1), ratio(1, 2))]).expect("valid");
            let ok = t.a == Real::rational(rat(1)) && t.b == Real::rational(rat(0)) && t.nu == nu;
            rep.exact("Levy triplet of g0", "Levy-Khintchine triplet (a, b, nu) of exp g0", ok);
            let mass = quad::gauss_legendre_real(|x| idd_density(&t, x, 30).unwrap_or(f64::NAN), -12.0, 12.0, 48);
            rep.numeric("density normalization", "Gaussian-Poisson density of exp g0", (mass - 1.0).abs(), opts.tol(1e-8));
        }
        Err(e) => {
            rep.error("Levy triplet of g0", "Levy-Khintchine triplet (a, b, nu) of exp g0", &e);
        }
    }
    let cf = idd_charfn_check(&g, &[0.0, 1.0, 2.0]).map(|v| v.into_iter().fold(0.0, f64::max));
    rep.from_result("characteristic function", "Fourier transform of the density vs exp g0(t)", cf, opts.tol(1e-6));
}

fn mean_periodic_report(rep: &mut VerificationReport, opts: &PipelineOptions) {
    let tol = opts.tol(1e-8);
    let m = mean_periodic_checks(&uniform_grid(-3.0, 3.0, 61), tol);
    rep.numeric("annihilation g0 * phi = 0", "convolution of g0 with the annihilator phi", m.annihilation, tol);
    rep.numeric("Fourier transform of phi", "Fourier transform of the annihilator phi", m.fourier, tol);
    rep.numeric("one-sided convolution", "convolution of g0^+ with phi vs -i(8t^2-3)exp(-t^2)", m.half_convolution, tol);
    rep.numeric("Fourier-Carleman transform", "Fourier-Carleman transform of g0 at z = 2i vs -(i/z^2)Q0", m.fourier_carleman, tol);
    rep.numeric("Laplace transform at 2i", "Laplace transform of g0 at z = 2i vs -(i/z^2)Q0", m.laplace, tol);
}

/// The classical identities: Krein string, Lévy–Khintchine and mean periodicity.
pub fn run_appendix(opts: &PipelineOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("appendix", opts.seed);
    string_checks(&mut rep);
    levy_checks(&mut rep, opts);
    mean_periodic_report(&mut rep, opts);
    rep
}

/// Every check of the g₀ ↔ E₀ ↔ H₀ example.
pub fn run_g0(opts: &PipelineOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("g0", opts.seed);
    spectral_checks(&mut rep);
    de_branges_checks(&mut rep, opts.seed, &|d| opts.tol(d));
    canonical_checks(&mut rep);
    weyl_checks(&mut rep, opts);
    screw_checks(&mut rep, opts);
    string_checks(&mut rep);
    levy_checks(&mut rep, opts);
    mean_periodic_report(&mut rep, opts);
    rep
}

fn random_cubic<R: Rng>(r: &mut R) -> FloatPoly {
    FloatPoly::new((0..4).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect())
}

/// The Paley–Wiener family at width `opts.r`, truncated at `opts.trunc`.
pub fn run_pw(opts: &PipelineOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("pw", opts.seed);
    let frame = match PWFrame::new(opts.r, opts.trunc) {
        Ok(f) => f,
        Err(e) => {
            rep.error("frame", "Paley-Wiener frame E_r = exp(-irz)", &e);
            return rep;
        }
    };
    let (r, n) = (frame.r(), frame.truncation());
    let mut rng = sampling::rng(opts.seed);

    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let (z, w) = (sampling::complex_box(&mut rng), sampling::complex_box(&mut rng));
        let (a, b) = (|x: Complex64| (r * x).cos(), |x: Complex64| (r * x).sin());
        let ab = (a(z).conj() * b(w) - a(w) * b(z).conj()) / (PI * (w - z.conj()));
        worst = worst.max((pw_kernel(r, z, w) - ab).norm() / (1.0 + ab.norm()));
    }
    rep.numeric("sinc kernel", "reproducing kernel of PW_r: sinc form vs (A,B) form", worst, opts.tol(1e-12));

    let sample_frame = PWFrame::new(r, n.min(64)).expect("valid frame");
    rep.numeric(
        "basis sampling on the lattice",
        "F_n/E_r on the level set of Theta_r",
        identity_deviation(&pw_sampling_gram(&sample_frame)),
        opts.tol(1e-10),
    );

    let n0 = 50.min(n / 2);
    let gram_n = (2 * n0).max(n.min(200));
    match pw_gram(&PWFrame::new(r, gram_n).expect("valid frame"), n0) {
        Ok((g, bound)) => {
            rep.numeric("truncated Gram matrix", "Gram matrix of F_n, |n| <= n0, on the zeros of sin(rz)", identity_deviation(&g), 0.02)
                .with_value(json!({"basis_range": n0, "lattice": gram_n, "tail_bound": bound}));
        }
        Err(e) => {
            rep.error("truncated Gram matrix", "Gram matrix of F_n on the zeros of sin(rz)", &e);
        }
    }

    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let t = rng.gen_range(0.0..r);
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
        worst = worst.max(fundamental_residual(t, z, 1e-5));
    }
    rep.numeric("canonical system for W_r", "fundamental solution W_r of H = I, central differences", worst, opts.tol(1e-6));

    let mut worst = 0.0_f64;
    let mut constant = 0.0_f64;
    for _ in 0..5 {
        let v = PwVector { f: random_cubic(&mut rng), g: random_cubic(&mut rng) };
        let points: Vec<Complex64> =
            (0..6).map(|_| Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-1.5..1.5))).collect();
        let rep_v = pw_weyl_is_fourier(&frame, &v, &points);
        worst = worst.max(rep_v.residual);
        constant = constant.max((rep_v.norm_constant.unwrap_or(f64::NAN) - 2.0 * PI).abs());
    }
    rep.numeric("Weyl transform is Fourier", "Weyl transform of L2(H_r) vs Fourier transform of f - ig", worst, opts.tol(1e-8));
    rep.numeric("norm constant", "||Psi||^2 / ||F||^2 = 2 pi", constant, opts.tol(1e-10)).with_value(json!(2.0 * PI));

    let z = Complex64::new(0.4, 0.3);
    let err = |m: usize| (tan_partial_fraction(&PWFrame::new(r, m).expect("valid"), z) - (r * z).tan()).norm();
    let ratio_tan = err(n) / err(2 * n);
    rep.numeric("tan partial fractions", "partial fractions of tan(rz): error ratio from N to 2N", (ratio_tan - 2.0).abs(), 0.5)
        .with_value(json!({"ratio": ratio_tan}));

    let bound = g_r_tail_bound(&frame);
    let worst = (0..200)
        .map(|k| {
            let t = -4.0 * r + 8.0 * r * k as f64 / 199.0;
            (g_r_eval(&frame, t) - g_r_closed(r, t)).abs()
        })
        .fold(0.0, f64::max);
    rep.numeric("g_r series", "truncated series of g_r vs the triangle wave -|t|", worst, bound);

    let screw = g_r_screw(&frame);
    let worst = (0..25)
        .map(|k| {
            let t = -3.0 * r + 0.25 * r * k as f64;
            (eval_screw(&screw, t) - g_r_eval(&frame, t)).norm()
        })
        .fold(0.0, f64::max);
    rep.numeric("g_r from its spectral measure", "g_r from tau_r = mu/pi", worst, opts.tol(1e-10));

    let z = Complex64::new(0.0, 2.0);
    let bound = 2.0 * r / (PI * PI * n as f64);
    match (g_r_laplace_check(&frame, z), g_r_laplace_check(&PWFrame::new(r, 2 * n).expect("valid"), z)) {
        (Ok(a), Ok(b)) => {
            rep.numeric("Laplace transform of g_r", "Laplace transform of g_r vs -i tan(rz)/z^2 at z = 2i", a, bound);
            rep.numeric("Laplace truncation order", "Laplace residual ratio from N to 2N", (a / b - 2.0).abs(), 0.5)
                .with_value(json!({"ratio": a / b}));
        }
        (Err(e), _) | (_, Err(e)) => {
            rep.error("Laplace transform of g_r", "Laplace transform of g_r vs -i tan(rz)/z^2", &e);
        }
    }
    let basis_zero = pw_basis(r, 0, Complex64::new(0.0, 0.0));
    rep.numeric("F_0 at the origin", "F_0(0) = i/sqrt(pi r) * 1/(pi/(2r))", (basis_zero - Complex64::i() * 2.0 * r / (PI * (PI * r).sqrt())).norm(), opts.tol(1e-14));
    rep
}
