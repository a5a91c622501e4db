//! Screw functions with discrete spectral measure, their kernel `G_g`,
//! positive-definiteness checks, the transform `Φ₁` and the inner product
//! of `H(G_g)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{RationalFunction, Real};
use crate::error::{Error, Result};
use crate::quad;
use crate::spectra::DiscreteMeasure;

/// `g(t) = g(0) + ict − τ({0})t²/2 + Σ_{γ≠0} m[(e^{itγ}−1)/γ² − it/(γ(1+γ²))]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScrewFunctionData {
    pub g0: Real,
    pub c: Real,
    pub tau: DiscreteMeasure,
}

impl ScrewFunctionData {
    pub fn new(g0: Real, c: Real, tau: DiscreteMeasure) -> Self {
        ScrewFunctionData { g0, c, tau }
    }

    /// `g₀(t) = −t²/2 + cos t − 1`, with `τ₀ = δ₀ + ½δ₁ + ½δ₋₁`.
    pub fn example_g0() -> Self {
        use crate::algebra::{rat, ratio};
        let tau = DiscreteMeasure::from_rationals(&[(rat(-1), ratio(1, 2)), (rat(0), rat(1)), (rat(1), ratio(1, 2))])
            .expect("valid measure");
        ScrewFunctionData::new(Real::rational(rat(0)), Real::rational(rat(0)), tau)
    }
}

/// Evaluates `g(t)`.
pub fn eval_screw(g: &ScrewFunctionData, t: f64) -> Complex64 {
    let mut v = Complex64::new(g.g0.to_f64(), g.c.to_f64() * t);
    for (gam, m) in g.tau.to_f64_pairs() {
        if gam == 0.0 {
            v -= m * t * t / 2.0;
        } else {
            let w = Complex64::new(0.0, t * gam);
            v += m * ((w.exp() - 1.0) / (gam * gam) - Complex64::new(0.0, t / (gam * (1.0 + gam * gam))));
        }
    }
    v
}

/// `G_g(t, s) = g(t−s) − g(t) − g(−s) + g(0)`.
pub fn kernel_g(g: &ScrewFunctionData, t: f64, s: f64) -> Complex64 {
    eval_screw(g, t - s) - eval_screw(g, t) - eval_screw(g, -s) + eval_screw(g, 0.0)
}

/// `√G_g(t, t)`, the distance between the screw-line points at `0` and `t`.
pub fn chord_length(g: &ScrewFunctionData, t: f64) -> Result<f64> {
    let d = kernel_g(g, t, t).re;
    if d < -1e-12 * (1.0 + t * t) {
        return Err(Error::InvalidInput(format!("kernel not nonnegative at {t}")));
    }
    Ok(d.max(0.0).sqrt())
}

/// Result of [`pd_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdCheck {
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Smallest eigenvalue of the Hermitian part of an arbitrary kernel's Gram matrix.
pub fn gram_min_eigenvalue<K: Fn(f64, f64) -> Complex64>(kernel: K, grid: &[f64]) -> f64 {
    let n = grid.len();
    if n == 0 {
        return 0.0;
    }
    let g = DMatrix::from_fn(n, n, |i, j| kernel(grid[i], grid[j]));
    let h = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Gram matrix `[G_g(tᵢ, tⱼ)]` eigenvalue test; passes iff `λ_min ≥ −tol`.
pub fn pd_check(g: &ScrewFunctionData, grid: &[f64], tol: f64) -> PdCheck {
    let min_eigenvalue = gram_min_eigenvalue(|t, s| kernel_g(g, t, s), grid);
    PdCheck { min_eigenvalue, pass: min_eigenvalue >= -tol }
}

/// `n` uniform points on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Uniformly sampled compactly supported function on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    lo: f64,
    hi: f64,
    samples: Vec<Complex64>,
}

/// Minimum sample count for a [`TestFunction`].
pub const MIN_SAMPLES: usize = 513;

impl TestFunction {
    /// Validates an odd sample count of at least [`MIN_SAMPLES`] and vanishing
    /// endpoint values.
    pub fn new(lo: f64, hi: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(hi > lo) || samples.len() < MIN_SAMPLES || samples.len() % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "test function needs hi > lo and an odd sample count ≥ {MIN_SAMPLES}"
            )));
        }
        let scale = samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
        let ends = samples[0].norm().max(samples[samples.len() - 1].norm());
        if ends > 1e-12 * scale.max(1.0) {
            return Err(Error::InvalidInput("test function must vanish at its endpoints".into()));
        }
        Ok(TestFunction { lo, hi, samples })
    }

    /// Samples `f` on `n` uniform points.
    pub fn from_fn<F: Fn(f64) -> Complex64>(lo: f64, hi: f64, n: usize, f: F) -> Result<Self> {
        TestFunction::new(lo, hi, uniform_grid(lo, hi, n).into_iter().map(f).collect())
    }

    pub fn zero(lo: f64, hi: f64, n: usize) -> Result<Self> {
        TestFunction::from_fn(lo, hi, n, |_| Complex64::new(0.0, 0.0))
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.samples.len() - 1) as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.lo, self.hi, self.samples.len())
    }

    fn weights(&self) -> Vec<f64> {
        quad::simpson_weights(self.samples.len(), self.step())
    }

    /// `∫ w(t)φ(t) dt` by composite Simpson.
    pub fn integrate_against<F: Fn(f64) -> Complex64>(&self, w: F) -> Complex64 {
        self.grid()
            .iter()
            .zip(self.weights())
            .zip(&self.samples)
            .map(|((t, q), s)| w(*t) * s * q)
            .sum()
    }

    /// `∫ φ`.
    pub fn mean(&self) -> Complex64 {
        quad::simpson(&self.samples, self.step())
    }

    /// `φ̂(z) = ∫ φ(t)e^{izt} dt`.
    pub fn fourier(&self, z: Complex64) -> Complex64 {
        self.integrate_against(|t| (Complex64::i() * z * t).exp())
    }

    /// `φ̂'(z) = ∫ itφ(t)e^{izt} dt`.
    pub fn fourier_derivative(&self, z: Complex64) -> Complex64 {
        self.integrate_against(|t| Complex64::i() * t * (Complex64::i() * z * t).exp())
    }

    pub fn scale(&self, c: Complex64) -> TestFunction {
        TestFunction { lo: self.lo, hi: self.hi, samples: self.samples.iter().map(|s| s * c).collect() }
    }

    /// Adds `c·other`; both must share the same grid.
    pub fn axpy(&self, c: Complex64, other: &TestFunction) -> Result<TestFunction> {
        if self.lo != other.lo || self.hi != other.hi || self.samples.len() != other.samples.len() {
            return Err(Error::InvalidInput("test functions on different grids".into()));
        }
        Ok(TestFunction {
            lo: self.lo,
            hi: self.hi,
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| a + b * c).collect(),
        })
    }

    /// The fixed bump `exp(−1/(1−u²))` on the middle 90% of the support.
    pub fn bump(&self) -> TestFunction {
        let mid = 0.5 * (self.lo + self.hi);
        let w = 0.45 * (self.hi - self.lo);
        let samples = self
            .grid()
            .iter()
            .map(|t| {
                let u = (t - mid) / w;
                let v = if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 };
                Complex64::new(v, 0.0)
            })
            .collect();
        TestFunction { lo: self.lo, hi: self.hi, samples }
    }

    /// Subtracts the quadrature mean times the fixed bump, so `∫φ = 0` for
    /// the discrete rule.
    pub fn zero_mean(&self) -> TestFunction {
        let b = self.bump();
        let c = self.mean() / b.mean();
        self.axpy(-c, &b).expect("same grid")
    }
}

/// Random zero-mean test function `p(t)·e^{−t²/s²}` on `[lo, hi]`, with a
/// random complex cubic `p` and width `s ∈ [0.8, 1.6]`.
pub fn random_test_function<R: Rng>(r: &mut R, lo: f64, hi: f64, n: usize) -> Result<TestFunction> {
    let coeffs: Vec<Complex64> = (0..4)
        .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect();
    let s: f64 = r.gen_range(0.8..1.6);
    let shift: f64 = r.gen_range(-0.5..0.5);
    let f = TestFunction::from_fn(lo, hi, n, |t| {
        let u = t - shift;
        let p = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + c);
        let env = (-(u * u) / (s * s)).exp();
        if t == lo || t == hi {
            Complex64::new(0.0, 0.0)
        } else {
            p * env
        }
    })?;
    Ok(f.zero_mean())
}

/// `(e^{izt} − 1)/z`, with the limit `it` at `z = 0`.
pub fn phi1_kernel(z: Complex64, t: f64) -> Complex64 {
    let w = Complex64::i() * z * t;
    if w.norm() < 1e-3 {
        Complex64::i() * t * (1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0)
    } else {
        (w.exp() - 1.0) / z
    }
}

/// `Φ₁(φ, z) = ∫ φ(t)(e^{izt} − 1)/z dt`.
pub fn phi1(phi: &TestFunction, z: Complex64) -> Complex64 {
    phi.integrate_against(|t| phi1_kernel(z, t))
}

/// Both evaluations of `⟨φ₁, φ₂⟩` in `H(G_g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProductPair {
    /// `∫∫ G_g(t, s) φ₁(t) conj φ₂(s) dt ds` by double quadrature.
    pub kernel: Complex64,
    /// `Σ_γ Φ₁(φ₁, γ) conj Φ₁(φ₂, γ) τ(γ)`.
    pub measure: Complex64,
    pub difference: f64,
}

/// Inner product of `H(G_g)` by the kernel and by the spectral measure.
pub fn inner_product_hg(g: &ScrewFunctionData, f1: &TestFunction, f2: &TestFunction) -> InnerProductPair {
    let kernel = kernel_quadrature(g, f1, f2);
    let measure = inner_product_measure(&g.tau, f1, f2);
    InnerProductPair { kernel, measure, difference: (kernel - measure).norm() }
}

/// `Σ_γ Φ₁(φ₁, γ) conj Φ₁(φ₂, γ) τ(γ)`.
pub fn inner_product_measure(tau: &DiscreteMeasure, f1: &TestFunction, f2: &TestFunction) -> Complex64 {
    tau.to_f64_pairs()
        .iter()
        .map(|&(gam, m)| {
            let z = Complex64::new(gam, 0.0);
            phi1(f1, z) * phi1(f2, z).conj() * m
        })
        .sum()
}

fn kernel_quadrature(g: &ScrewFunctionData, f1: &TestFunction, f2: &TestFunction) -> Complex64 {
    let t1 = f1.grid();
    let t2 = f2.grid();
    let w1 = f1.weights();
    let w2 = f2.weights();
    let g_t: Vec<Complex64> = t1.iter().map(|&t| eval_screw(g, t)).collect();
    let g_ms: Vec<Complex64> = t2.iter().map(|&s| eval_screw(g, -s)).collect();
    let g_zero = eval_screw(g, 0.0);
    let a: Vec<Complex64> = f1.samples.iter().zip(&w1).map(|(s, w)| s * w).collect();
    let b: Vec<Complex64> = f2.samples.iter().zip(&w2).map(|(s, w)| s.conj() * w).collect();
    let same_grid = f1.lo == f2.lo && f1.hi == f2.hi && t1.len() == t2.len();
    // On a shared uniform grid g(tᵢ − sⱼ) depends only on i − j.
    let diff: Option<Vec<Complex64>> = same_grid.then(|| {
        let n = t1.len() as i64;
        let h = f1.step();
        (-(n - 1)..n).map(|k| eval_screw(g, k as f64 * h)).collect()
    });
    let n2 = t2.len() as i64;
    let mut total = Complex64::new(0.0, 0.0);
    for (i, ai) in a.iter().enumerate() {
        if ai.norm() == 0.0 {
            continue;
        }
        let mut row = Complex64::new(0.0, 0.0);
        for (j, bj) in b.iter().enumerate() {
            let gd = match &diff {
                Some(d) => d[(i as i64 - j as i64 + n2 - 1) as usize],
                None => eval_screw(g, t1[i] - t2[j]),
            };
            row += (gd - g_t[i] - g_ms[j] + g_zero) * bj;
        }
        total += row * ai;
    }
    total
}

/// `|∫₀ᵀ g(t)e^{izt}dt + (i/z²)Q(z)|` for `Im z > 0`.
pub fn laplace_check(g: &ScrewFunctionData, q: &RationalFunction, z: Complex64, t_max: f64) -> Result<f64> {
    if z.im <= 0.0 {
        return Err(Error::InvalidInput("laplace_check needs Im z > 0".into()));
    }
    let panels = ((t_max * (1.0 + z.norm())) * 2.0).ceil().max(8.0) as usize;
    let integral = quad::gauss_legendre(|t| eval_screw(g, t) * (Complex64::i() * z * t).exp(), 0.0, t_max, panels);
    let expect = if q.is_zero() { Complex64::new(0.0, 0.0) } else { -Complex64::i() * q.eval_c64(z) / (z * z) };
    Ok((integral - expect).norm())
}
