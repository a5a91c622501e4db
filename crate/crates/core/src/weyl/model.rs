//! The model-space picture: coefficients over the θ = π/2 eigenbasis of
//! `H(E)`, the screw line `𝔖`, the maps `𝒫̂` and `L₀`, and the residuals of
//! both commutative diagrams.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use super::{inverse_from_values, l2h_norm_sq, weyl_transform, RowPair, StepVector};
use crate::algebra::{Angle, FloatPoly, Real};
use crate::canonical::{factorize, transfer_matrix, Hamiltonian};
use crate::debranges::{extension_eigenbasis, line_inner_product, HermiteBiehlerFrame};
use crate::error::{Error, Result};
use crate::sampling;
use crate::screw::{
    inner_product_hg, kernel_g, phi1, phi1_kernel, random_test_function, ScrewFunctionData, TestFunction,
};
use crate::spectra::tau_from_mu;

/// Pass threshold for every diagram residual.
pub const DIAGRAM_TOL: f64 = 1e-6;

/// Names of the residuals reported by [`diagram_check`].
pub const DIAGRAM_LEGS: [&str; 6] = [
    "kernel vs transform",
    "transform vs model norm",
    "model norm vs level-set sum",
    "L0 isometry",
    "triangle W∘L0 = E·P",
    "square P(γ) = ω_γ·Φ1(φ, γ)",
];

const SUPPORT: (f64, f64) = (-10.0, 10.0);
const SAMPLES: usize = 513;
const LINE_PANELS: usize = 400;

/// A de Branges space together with its Hamiltonian and the normalized
/// eigenbasis `F_γ` of the self-adjoint extension with `R = A`.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    frame: HermiteBiehlerFrame,
    hamiltonian: Hamiltonian,
    rows: RowPair,
    nodes: Vec<f64>,
    basis: Vec<FloatPoly>,
    /// `w_γ = 1/|F_γ(γ)|²`, the norm weight at `γ`.
    weights: Vec<f64>,
    /// `μ(γ) = w_γ|E(γ)|²`.
    masses: Vec<f64>,
    /// `F_γ(γ)`.
    diagonal: Vec<Complex64>,
}

impl ModelSpace {
    /// Requires `deg A = deg E`, so the zeros of `A` index a full basis.
    pub fn new(frame: HermiteBiehlerFrame) -> Result<Self> {
        let n = frame.degree();
        if n == 0 || frame.a().degree() != Some(n) {
            return Err(Error::Eigenbasis("the zeros of A do not give a basis".into()));
        }
        let hamiltonian = factorize(&transfer_matrix(&frame)?)?;
        let eb = extension_eigenbasis(&frame, &Angle::half_pi())?;
        let nodes: Vec<f64> = eb.eigenvalues.iter().map(Real::to_f64).collect();
        let basis: Vec<FloatPoly> = eb.normalized.iter().map(|f| f.to_float()).collect();
        let e = frame.e().to_float();
        let diagonal: Vec<Complex64> =
            nodes.iter().zip(&basis).map(|(&g, f)| f.eval(&Complex64::new(g, 0.0))).collect();
        let weights: Vec<f64> = diagonal.iter().map(|d| 1.0 / d.norm_sqr()).collect();
        let masses =
            nodes.iter().zip(&weights).map(|(&g, w)| w * e.eval(&Complex64::new(g, 0.0)).norm_sqr()).collect();
        Ok(ModelSpace { frame, hamiltonian, rows: RowPair::CD, nodes, basis, weights, masses, diagonal })
    }

    /// The space of `E₀ = z³ + 2iz² − z − i`.
    pub fn example_e0() -> Self {
        ModelSpace::new(HermiteBiehlerFrame::example_e0()).expect("E0 has a full level set")
    }

    pub fn frame(&self) -> &HermiteBiehlerFrame {
        &self.frame
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn rows(&self) -> RowPair {
        self.rows
    }

    /// Eigenvalues `γ`, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `F_γ` in the order of [`Self::nodes`].
    pub fn basis(&self) -> &[FloatPoly] {
        &self.basis
    }

    /// Level-set masses `μ(γ)`.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// The screw function with spectral measure `τ = μ/π` and `g(0) = c = 0`.
    pub fn screw_data(&self) -> ScrewFunctionData {
        ScrewFunctionData::new(Real::Float(0.0), Real::Float(0.0), tau_from_mu(self.frame.mu()))
    }

    /// `ω_γ = √μ(γ)·F_γ(γ)/E(γ)`; each has modulus one.
    pub fn omega(&self) -> Vec<Complex64> {
        let e = self.frame.e().to_float();
        self.nodes
            .iter()
            .zip(&self.masses)
            .zip(&self.diagonal)
            .map(|((&g, m), d)| m.sqrt() * d / e.eval(&Complex64::new(g, 0.0)))
            .collect()
    }

    fn vector(&self, coeffs: Vec<Complex64>) -> ModelVector {
        ModelVector { eigenvalues: self.nodes.clone(), coeffs }
    }
}

/// Coefficients over the orthonormal basis `F_γ/E` of the model space.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelVector {
    pub eigenvalues: Vec<f64>,
    pub coeffs: Vec<Complex64>,
}

impl ModelVector {
    /// `⟨x, y⟩ = Σ x_γ·conj y_γ`.
    pub fn inner(&self, other: &ModelVector) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }
}

/// `𝔖_t` with coefficients `√μ(γ)·(e^{iγt} − 1)/γ`.
pub fn screw_line_s(space: &ModelSpace, t: f64) -> ModelVector {
    space.vector(
        space.nodes.iter().zip(&space.masses).map(|(&g, m)| m.sqrt() * phi1_kernel(Complex64::new(g, 0.0), t)).collect(),
    )
}

/// `𝒫̂_φ` with coefficients `√μ(γ)·Φ₁(φ, γ)`.
pub fn phat(space: &ModelSpace, phi: &TestFunction) -> ModelVector {
    space.vector(
        space.nodes.iter().zip(&space.masses).map(|(&g, m)| m.sqrt() * phi1(phi, Complex64::new(g, 0.0))).collect(),
    )
}

/// `E·v = Σ v_γ F_γ ∈ H(E)`.
pub fn e_times(space: &ModelSpace, v: &ModelVector) -> FloatPoly {
    v.coeffs.iter().zip(&space.basis).fold(FloatPoly::zero(), |acc, (c, f)| &acc + &f.scale(c))
}

/// `L₀φ = Σ_γ √μ(γ)·Φ₁(φ, γ)·F_γ(γ)·w_γ·row(t, γ)ᵀ`.
pub fn l0_map(space: &ModelSpace, phi: &TestFunction) -> Result<StepVector<Complex64>> {
    let p = phat(space, phi);
    let values: Vec<(f64, Complex64)> = space
        .nodes
        .iter()
        .zip(&p.coeffs)
        .zip(space.diagonal.iter().zip(&space.weights))
        .map(|((&g, c), (d, w))| (g, c * d * w))
        .collect();
    inverse_from_values(&space.hamiltonian, &values, space.rows)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// The six residuals for one test function, in the order of [`DIAGRAM_LEGS`].
/// The screw side (kernel and `Φ₁` sum) uses `screw`; the model side uses
/// the frame of `space`.
pub fn diagram_residuals(space: &ModelSpace, screw: &ScrewFunctionData, phi: &TestFunction) -> Result<[f64; 6]> {
    let pair = inner_product_hg(screw, phi, phi);
    let kernel = pair.kernel.re;
    let transform = pair.measure.re;
    let p = phat(space, phi);
    let ep = e_times(space, &p);
    let pi = std::f64::consts::PI;
    let line = line_inner_product(&space.frame, &ep, &ep, LINE_PANELS)?.re / pi;
    let e = space.frame.e().to_float();
    let values: Vec<Complex64> =
        space.nodes.iter().map(|&g| ep.eval(&Complex64::new(g, 0.0)) / e.eval(&Complex64::new(g, 0.0))).collect();
    let level: f64 = values.iter().zip(&space.masses).map(|(v, m)| v.norm_sqr() * m).sum::<f64>() / pi;
    let l0 = l0_map(space, phi)?;
    let restricted = l2h_norm_sq(&space.hamiltonian, &l0)?.to_c64().re / pi;
    let image = weyl_transform(&space.hamiltonian, &l0, space.rows)?.to_float();
    let n = ep.len().max(image.len());
    let scale = 1.0 + ep.max_abs_coeff();
    let triangle = (0..n).map(|k| (image.coeff(k) - ep.coeff(k)).norm()).fold(0.0, f64::max) / scale;
    let square = values
        .iter()
        .zip(space.omega())
        .zip(&space.nodes)
        .map(|((v, w), &g)| (v - w * phi1(phi, Complex64::new(g, 0.0))).norm())
        .fold(0.0, f64::max)
        / scale;
    Ok([
        relative(kernel, transform),
        relative(transform, line),
        relative(line, level),
        relative(restricted, level),
        triangle,
        square,
    ])
}

/// Largest residual of one leg over all samples.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramResidual {
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramReport {
    pub samples: usize,
    pub legs: Vec<DiagramResidual>,
    pub pass: bool,
}

/// Residuals of both diagrams over `samples` seeded random test functions
/// on `[−10, 10]`.
pub fn diagram_check(space: &ModelSpace, screw: &ScrewFunctionData, samples: usize, seed: u64) -> Result<DiagramReport> {
    let mut r = sampling::rng(seed);
    let phis: Vec<TestFunction> = (0..samples)
        .map(|_| random_test_function(&mut r, SUPPORT.0, SUPPORT.1, SAMPLES))
        .collect::<Result<_>>()?;
    let rows: Vec<[f64; 6]> = std::thread::scope(|s| {
        let handles: Vec<_> = phis.iter().map(|phi| s.spawn(move || diagram_residuals(space, screw, phi))).collect();
        handles.into_iter().map(|h| h.join().expect("diagram worker")).collect::<Result<_>>()
    })?;
    let legs: Vec<DiagramResidual> = DIAGRAM_LEGS
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let residual = rows.iter().map(|r| r[k]).fold(0.0, f64::max);
            DiagramResidual { name, residual, pass: residual < DIAGRAM_TOL }
        })
        .collect();
    let pass = legs.iter().all(|l| l.pass);
    Ok(DiagramReport { samples, legs, pass })
}

/// A test function on `[−10, 10]` with `Φ₁(φ, γ) = targets[γ]` at the nodes,
/// built as a combination of random test functions.
pub fn aligned_test_function<R: Rng>(space: &ModelSpace, targets: &[Complex64], r: &mut R) -> Result<TestFunction> {
    let n = space.nodes.len();
    if targets.len() != n {
        return Err(Error::InvalidInput(format!("{} targets for {n} nodes", targets.len())));
    }
    let parts: Vec<TestFunction> =
        (0..n).map(|_| random_test_function(r, SUPPORT.0, SUPPORT.1, SAMPLES)).collect::<Result<_>>()?;
    let m = DMatrix::from_fn(n, n, |i, j| phi1(&parts[j], Complex64::new(space.nodes[i], 0.0)));
    let a = m
        .lu()
        .solve(&DVector::from_column_slice(targets))
        .ok_or_else(|| Error::Degenerate("random test functions are dependent".into()))?;
    let mut out = TestFunction::zero(SUPPORT.0, SUPPORT.1, SAMPLES)?;
    for (c, p) in a.iter().zip(&parts) {
        out = out.axpy(*c, p)?;
    }
    Ok(out)
}

/// Gram matrix of the test functions `φ_γ` with `Φ₁(φ_γ, ·) = √π·F_γ/E` on
/// the nodes, computed with the kernel `G_g`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiGram {
    pub gram: Vec<Vec<Complex64>>,
    /// Mean of the diagonal.
    pub constant: f64,
    /// Largest deviation from `constant·I`.
    pub deviation: f64,
    /// `G(t, s)/Σ_γ f_γ(t)·conj f_γ(s)` at sample points, where
    /// `f_γ = ∫G(·, u)φ_γ(u) du`.
    pub kernel_constant: f64,
}

pub fn phi_basis_gram(space: &ModelSpace, screw: &ScrewFunctionData, seed: u64) -> Result<PhiGram> {
    let mut r = sampling::rng(seed);
    let e = space.frame.e().to_float();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let n = space.nodes.len();
    let phis: Vec<TestFunction> = (0..n)
        .map(|k| {
            let targets: Vec<Complex64> = (0..n)
                .map(|i| {
                    let z = Complex64::new(space.nodes[i], 0.0);
                    sqrt_pi * space.basis[k].eval(&z) / e.eval(&z)
                })
                .collect();
            aligned_test_function(space, &targets, &mut r)
        })
        .collect::<Result<_>>()?;
    let gram: Vec<Vec<Complex64>> =
        phis.iter().map(|a| phis.iter().map(|b| inner_product_hg(screw, a, b).kernel).collect()).collect();
    let constant = (0..n).map(|k| gram[k][k].re).sum::<f64>() / n as f64;
    let deviation = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (gram[i][j] - if i == j { constant } else { 0.0 }).norm())
        .fold(0.0, f64::max);
    let probes = [(0.7, -1.3), (2.1, 0.4), (-1.6, -2.5)];
    let image = |phi: &TestFunction, t: f64| phi.integrate_against(|u| kernel_g(screw, t, u));
    let kernel_constant = probes
        .iter()
        .map(|&(t, s)| {
            let sum: Complex64 = phis.iter().map(|p| image(p, t) * image(p, s).conj()).sum();
            (kernel_g(screw, t, s) / sum).re
        })
        .sum::<f64>()
        / probes.len() as f64;
    Ok(PhiGram { gram, constant, deviation, kernel_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::DiscreteMeasure;

    fn g0() -> ScrewFunctionData {
        ScrewFunctionData::example_g0()
    }

    #[test]
    fn masses_and_phases() {
        let m = ModelSpace::example_e0();
        assert_eq!(m.nodes(), &[-1.0, 0.0, 1.0]);
        let pi = std::f64::consts::PI;
        for (got, want) in m.masses().iter().zip([pi / 2.0, pi, pi / 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(m.omega().iter().all(|w| (w.norm() - 1.0).abs() < 1e-12));
        let tau = m.screw_data().tau.to_f64_pairs();
        assert!(tau.iter().zip(g0().tau.to_f64_pairs()).all(|(a, b)| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12));
    }

    #[test]
    fn screw_line_gram_identity() {
        let m = ModelSpace::example_e0();
        let g = g0();
        let mut r = sampling::rng(3);
        for _ in 0..20 {
            let t: f64 = r.gen_range(-6.0..6.0);
            let s: f64 = r.gen_range(-6.0..6.0);
            let lhs = screw_line_s(&m, t).inner(&screw_line_s(&m, s));
            let closed = std::f64::consts::PI * (t * s + (t - s).cos() - t.cos() - s.cos() + 1.0);
            assert!((lhs - std::f64::consts::PI * kernel_g(&g, t, s)).norm() < 1e-12);
            assert!((lhs.re - closed).abs() < 1e-12 && lhs.im.abs() < 1e-12);
        }
        let t = 1.3;
        let g0t = -t * t / 2.0 + f64::cos(t) - 1.0;
        assert!((screw_line_s(&m, t).norm_sq() + 2.0 * std::f64::consts::PI * g0t).abs() < 1e-12);
        assert!(screw_line_s(&m, 0.0).is_zero());
    }

    #[test]
    fn screw_line_matches_the_closed_form_coefficients() {
        let m = ModelSpace::example_e0();
        let t = 0.9;
        let c = screw_line_s(&m, t).coeffs;
        let pi = std::f64::consts::PI;
        let i = Complex64::i();
        let half = (pi / 2.0).sqrt();
        assert!((c[1] - pi.sqrt() * i * t).norm() < 1e-14);
        assert!((c[2] - half * ((i * t).exp() - 1.0)).norm() < 1e-14);
        assert!((c[0] + half * ((-i * t).exp() - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn phat_is_an_isometry() {
        let m = ModelSpace::example_e0();
        let g = g0();
        let mut r = sampling::rng(5);
        for _ in 0..3 {
            let phi = random_test_function(&mut r, -10.0, 10.0, 513).unwrap();
            let p = phat(&m, &phi);
            let ep = e_times(&m, &p);
            let norm = crate::debranges::inner_product_float(m.frame(), &ep, &ep).unwrap().re;
            let kernel = inner_product_hg(&g, &phi, &phi).kernel.re;
            assert!(relative(norm, std::f64::consts::PI * kernel) < 1e-6);
            // Coefficients against the Fourier transform.
            let f = |z: f64| phi.fourier(Complex64::new(z, 0.0));
            let d = phi.fourier_derivative(Complex64::new(0.0, 0.0));
            let pi = std::f64::consts::PI;
            let half = (pi / 2.0).sqrt();
            assert!((p.coeffs[1] - pi.sqrt() * d).norm() < 1e-9);
            assert!((p.coeffs[2] - half * f(1.0)).norm() < 1e-9);
            assert!((p.coeffs[0] + half * f(-1.0)).norm() < 1e-9);
        }
        let zero = TestFunction::zero(-10.0, 10.0, 513).unwrap();
        assert!(phat(&m, &zero).is_zero());
        assert!(l0_map(&m, &zero).unwrap().is_zero());
    }

    #[test]
    fn aligned_function_maps_to_the_first_inverse_image() {
        let m = ModelSpace::example_e0();
        let mut r = sampling::rng(8);
        let pi = std::f64::consts::PI;
        // φ̂'(0) = −1/√π and φ̂(±1) = 0.
        let targets = [Complex64::new(0.0, 0.0), Complex64::new(-1.0 / pi.sqrt(), 0.0), Complex64::new(0.0, 0.0)];
        let phi = aligned_test_function(&m, &targets, &mut r).unwrap();
        let p = phat(&m, &phi);
        assert!((p.coeffs[1] + 1.0).norm() < 1e-12 && p.coeffs[0].norm() < 1e-12 && p.coeffs[2].norm() < 1e-12);
        let l0 = l0_map(&m, &phi).unwrap();
        // L₀φ = √π·[C(t, 0); D(t, 0)] = [0; √π].
        for t in [0.1, 1.0, 3.3, 4.8] {
            let v = l0.eval(m.hamiltonian(), t).unwrap();
            assert!(v[0].norm() < 1e-12 && (v[1] - pi.sqrt()).norm() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn l0_matches_the_closed_form() {
        let m = ModelSpace::example_e0();
        let mut r = sampling::rng(21);
        let phi = random_test_function(&mut r, -10.0, 10.0, 513).unwrap();
        let l0 = l0_map(&m, &phi).unwrap();
        let h = m.hamiltonian();
        let pi = std::f64::consts::PI;
        let d0 = phi.fourier_derivative(Complex64::new(0.0, 0.0));
        let f1 = phi.fourier(Complex64::new(1.0, 0.0));
        let fm1 = phi.fourier(Complex64::new(-1.0, 0.0));
        for t in [0.2, 0.5, 2.0, 4.7, 5.0] {
            let row = |g: f64| {
                let w = crate::canonical::fundamental_solution_at(h, t, Complex64::new(g, 0.0)).unwrap();
                [w[1][0], w[1][1]]
            };
            let (a, b, c) = (row(0.0), row(1.0), row(-1.0));
            let v = l0.eval(h, t).unwrap();
            for j in 0..2 {
                let want = pi * (-d0 * a[j] + 0.5 * f1 * b[j] - 0.5 * fm1 * c[j]);
                assert!((v[j] - want).norm() < 1e-9, "t = {t}, j = {j}");
            }
        }
    }

    #[test]
    fn diagrams_commute_for_the_example() {
        let m = ModelSpace::example_e0();
        let report = diagram_check(&m, &g0(), 6, 2024).unwrap();
        assert!(report.pass, "{report:?}");
        let zero = TestFunction::zero(-10.0, 10.0, 513).unwrap();
        assert_eq!(diagram_residuals(&m, &g0(), &zero).unwrap(), [0.0; 6]);
    }

    #[test]
    fn perturbed_mass_breaks_only_the_transform_leg() {
        let m = ModelSpace::example_e0();
        let tau = DiscreteMeasure::from_f64(&[(-1.0, 0.5), (0.0, 1.01), (1.0, 0.5)]).unwrap();
        let g = ScrewFunctionData::new(Real::Float(0.0), Real::Float(0.0), tau);
        let report = diagram_check(&m, &g, 4, 7).unwrap();
        assert!(!report.pass);
        let failing: Vec<&str> = report.legs.iter().filter(|l| !l.pass).map(|l| l.name).collect();
        assert_eq!(failing, vec![DIAGRAM_LEGS[1]]);
    }

    #[test]
    fn phi_basis_gram_constant() {
        let m = ModelSpace::example_e0();
        let gram = phi_basis_gram(&m, &g0(), 99).unwrap();
        assert!((gram.constant - 1.0).abs() < 1e-6, "{gram:?}");
        assert!(gram.deviation < 1e-6);
        assert!((gram.kernel_constant - 1.0).abs() < 1e-6);
    }

    #[test]
    fn frames_without_a_full_level_set_are_rejected() {
        let e = crate::algebra::Polynomial::from_int_pairs(&[(-1, 0), (0, 1)]);
        let f = HermiteBiehlerFrame::new(e).unwrap();
        assert!(ModelSpace::new(f).is_err());
    }
}
