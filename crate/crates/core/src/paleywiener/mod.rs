//! The constant Hamiltonian `H ≡ I` on `[0, r]` and its Paley–Wiener space,
//! generated by `E_r(z) = exp(−irz)`.
//!
//! Everything infinite here is truncated: lattices and series keep the
//! points `±(2k − 1)π/(2r)` for `1 ≤ k ≤ N`, and every truncated quantity
//! comes with a tail bound.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{FloatPoly, Mat2, Real};
use crate::error::{Error, Result};
use crate::quad;
use crate::screw::{phi1, ScrewFunctionData, TestFunction};
use crate::spectra::{Atom, DiscreteMeasure};

/// Width `r` of the interval and lattice truncation `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PWFrame {
    r: f64,
    n: usize,
}

impl PWFrame {
    pub fn new(r: f64, n: usize) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("truncation must be at least 1".into()));
        }
        Ok(PWFrame { r, n })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    /// Indices `n` with `γₙ` in the truncated lattice: `−N < n ≤ N`.
    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        let n = self.n as i64;
        (1 - n)..=n
    }
}

/// `γₙ = π(2n − 1)/(2r)`, the zeros of `cos(rz)`.
pub fn lattice_point(r: f64, n: i64) -> f64 {
    PI * (2 * n - 1) as f64 / (2.0 * r)
}

/// `E_r(z) = exp(−irz)`.
pub fn pw_e(r: f64, z: Complex64) -> Complex64 {
    (-Complex64::i() * r * z).exp()
}

/// `K(z, w) = sin(r(w − z̄))/(π(w − z̄))`, with value `r/π` at `w = z̄`.
pub fn pw_kernel(r: f64, z: Complex64, w: Complex64) -> Complex64 {
    let d = w - z.conj();
    if d.norm() * r < 1e-4 {
        let x2 = (r * d) * (r * d);
        return r / PI * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    }
    (r * d).sin() / (PI * d)
}

/// `Fₙ(z) = i cos(rz)/(√(πr)(z − γₙ))`, the θ = π/2 eigenbasis.
pub fn pw_basis(r: f64, n: i64, z: Complex64) -> Complex64 {
    let g = lattice_point(r, n);
    let d = z - g;
    let norm = (PI * r).sqrt();
    if d.norm() * r < 1e-6 {
        // cos(rz) = −r sin(rγₙ)(z − γₙ) + O((z − γₙ)²) near γₙ.
        let s = (r * g).sin();
        return Complex64::i() * (-r * s + 0.5 * r * r * (r * g).cos() * d) / norm;
    }
    Complex64::i() * (r * z).cos() / (norm * d)
}

/// Level-set measure `μ = Σ (π/r)·δ_γ` over the truncated lattice.
pub fn pw_measure(frame: &PWFrame) -> DiscreteMeasure {
    let mass = PI / frame.r;
    let atoms = frame
        .indices()
        .map(|n| Atom { point: Real::Float(lattice_point(frame.r, n)), mass: Real::Float(mass) })
        .collect();
    DiscreteMeasure::new(atoms).expect("lattice points are distinct")
}

/// `Σ_γ μ(γ)·F(γ)·conj G(γ)/|E(γ)|²` for a float measure.
fn sampled_inner<F: Fn(f64) -> Complex64, G: Fn(f64) -> Complex64>(
    pairs: &[(f64, f64)],
    r: f64,
    f: F,
    g: G,
) -> Complex64 {
    pairs
        .iter()
        .map(|&(x, m)| {
            let e = pw_e(r, Complex64::new(x, 0.0)).norm_sqr();
            f(x) * g(x).conj() * m / e
        })
        .sum()
}

/// Gram matrix of `{Fₙ}`, over [`PWFrame::indices`], in `L²(μ)` of the
/// truncated lattice.
pub fn pw_sampling_gram(frame: &PWFrame) -> DMatrix<Complex64> {
    let pairs = pw_measure(frame).to_f64_pairs();
    let idx: Vec<i64> = frame.indices().collect();
    let r = frame.r;
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        sampled_inner(&pairs, r, |x| pw_basis(r, idx[i], x.into()), |x| pw_basis(r, idx[j], x.into()))
    })
}

/// Gram matrix of `{Fₙ : |n| ≤ n₀}` sampled on the zeros `πk/r`, `|k| ≤ N`,
/// of `sin(rz)` with masses `π/r`, together with the tail bound
/// `2/(π²(N − n₀))` on every entry.
pub fn pw_gram(frame: &PWFrame, n0: usize) -> Result<(DMatrix<Complex64>, f64)> {
    if n0 >= frame.n {
        return Err(Error::InvalidInput(format!("basis range {n0} must be below the truncation {}", frame.n)));
    }
    let r = frame.r;
    let n = frame.n as i64;
    let pairs: Vec<(f64, f64)> = (-n..=n).map(|k| (PI * k as f64 / r, PI / r)).collect();
    let idx: Vec<i64> = (-(n0 as i64)..=n0 as i64).collect();
    let gram = DMatrix::from_fn(idx.len(), idx.len(), |i, j| {
        sampled_inner(&pairs, r, |x| pw_basis(r, idx[i], x.into()), |x| pw_basis(r, idx[j], x.into()))
    });
    Ok((gram, 2.0 / (PI * PI * (frame.n - n0) as f64)))
}

/// `max |G − I|`.
pub fn identity_deviation(g: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// `W_r(t, z) = [[cos tz, sin tz], [−sin tz, cos tz]]` for `0 ≤ t ≤ r`.
pub fn pw_fundamental(r: f64, t: f64, z: Complex64) -> Result<Mat2> {
    if !(0.0..=r).contains(&t) {
        return Err(Error::OutOfRange(format!("t = {t} outside [0, {r}]")));
    }
    Ok(rotation(t, z))
}

fn rotation(t: f64, z: Complex64) -> Mat2 {
    let (c, s) = ((t * z).cos(), (t * z).sin());
    [[c, s], [-s, c]]
}

/// `‖∂ₜW + z·W·J‖` by central differences with step `h`, `J = [[0, −1], [1, 0]]`.
pub fn fundamental_residual(t: f64, z: Complex64, h: f64) -> f64 {
    let (wp, wm, w) = (rotation(t + h, z), rotation(t - h, z), rotation(t, z));
    let mut worst = 0.0_f64;
    for i in 0..2 {
        // (W·J)[i] = [W[i][1], −W[i][0]].
        let wj = [w[i][1], -w[i][0]];
        for j in 0..2 {
            let d = (wp[i][j] - wm[i][j]) / (2.0 * h);
            worst = worst.max((d + z * wj[j]).norm());
        }
    }
    worst
}

/// `(1/r) Σ 1/(γ − z)` over the truncated lattice, which tends to `tan(rz)`.
pub fn tan_partial_fraction(frame: &PWFrame, z: Complex64) -> Complex64 {
    frame.indices().map(|n| 1.0 / (lattice_point(frame.r, n) - z)).sum::<Complex64>() / frame.r
}

/// `Σ_{n ≤ N} cos((2n − 1)x)/(2n − 1)²` by a rotation recurrence.
fn odd_cosine_sum(x: f64, terms: usize) -> f64 {
    let w = Complex64::from_polar(1.0, x);
    let w2 = w * w;
    let mut e = w;
    let mut total = 0.0;
    for k in 0..terms {
        let m = (2 * k + 1) as f64;
        total += e.re / (m * m);
        e *= w2;
    }
    total
}

fn odd_square_sum(terms: usize) -> f64 {
    (0..terms).map(|k| 1.0 / ((2 * k + 1) as f64).powi(2)).sum()
}

/// `g_r(t) = (2/r) Σ_{n ≤ N} (cos(γₙt) − 1)/γₙ²`.
pub fn g_r_eval(frame: &PWFrame, t: f64) -> f64 {
    let x = PI * t / (2.0 * frame.r);
    8.0 * frame.r / (PI * PI) * (odd_cosine_sum(x, frame.n) - odd_square_sum(frame.n))
}

/// Uniform bound `8r/(π²(2N − 1))` on the omitted terms of [`g_r_eval`].
pub fn g_r_tail_bound(frame: &PWFrame) -> f64 {
    8.0 * frame.r / (PI * PI * (2 * frame.n - 1) as f64)
}

/// The untruncated `g_r`: the `4r`-periodic triangle wave equal to `−|t|` on `[−2r, 2r]`.
pub fn g_r_closed(r: f64, t: f64) -> f64 {
    let u = (t + 2.0 * r).rem_euclid(4.0 * r) - 2.0 * r;
    -u.abs()
}

/// `g_r` as a screw function: `g(0) = 0`, `c = 0`, `τ_r = μ/π`.
pub fn g_r_screw(frame: &PWFrame) -> ScrewFunctionData {
    let tau = pw_measure(frame).scale(&Real::Float(1.0 / PI));
    ScrewFunctionData::new(Real::Float(0.0), Real::Float(0.0), tau)
}

/// `|∫₀^∞ g_r(t)e^{izt}dt + (i/z²)tan(rz)|` for `Im z > 0` with the truncated
/// series. The cosine part is `2r`-antiperiodic, so quadrature runs over
/// `[0, 2r]` and the rest is a geometric sum.
pub fn g_r_laplace_check(frame: &PWFrame, z: Complex64) -> Result<f64> {
    if z.im <= 0.0 {
        return Err(Error::InvalidInput("the Laplace check needs Im z > 0".into()));
    }
    let r = frame.r;
    let top = lattice_point(r, frame.n as i64) + z.norm();
    let panels = ((2.0 * r * top / (2.0 * PI)).ceil() as usize).max(16);
    let iz = Complex64::i() * z;
    let period = quad::gauss_legendre(
        |t| (iz * t).exp() * odd_cosine_sum(PI * t / (2.0 * r), frame.n),
        0.0,
        2.0 * r,
        panels,
    );
    let cosines = period / (1.0 + (2.0 * r * iz).exp());
    let constant = odd_square_sum(frame.n) * Complex64::i() / z;
    let integral = 8.0 * r / (PI * PI) * (cosines - constant);
    Ok((integral + Complex64::i() * (r * z).tan() / (z * z)).norm())
}

/// `𝔉 = [f; g]` on `[0, r]` with polynomial components in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PwVector {
    pub f: FloatPoly,
    pub g: FloatPoly,
}

impl PwVector {
    pub fn zero() -> Self {
        PwVector { f: FloatPoly::zero(), g: FloatPoly::zero() }
    }

    /// `Ψ(t) = f(|t|) − i·sign(t)·g(|t|)`.
    pub fn psi(&self, t: f64) -> Complex64 {
        let a = Complex64::new(t.abs(), 0.0);
        let g = self.g.eval_c64(a);
        self.f.eval_c64(a) - Complex64::i() * if t < 0.0 { -g } else { g }
    }
}

/// `∫₀^r p(t)e^{izt} dt`, by a power series for `|z|r < 2` and by parts otherwise.
fn poly_exp_integral(p: &FloatPoly, r: f64, z: Complex64) -> Complex64 {
    let cs = p.coeffs();
    if cs.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let iz = Complex64::i() * z;
    if z.norm() * r < 2.0 {
        // Σ_m (iz)^m/m! Σ_k p_k r^{k+m+1}/(k+m+1).
        let mut total = Complex64::new(0.0, 0.0);
        let mut factor = Complex64::new(1.0, 0.0);
        for m in 0..200 {
            let inner: Complex64 = cs
                .iter()
                .enumerate()
                .map(|(k, c)| c * r.powi((k + m + 1) as i32) / (k + m + 1) as f64)
                .sum();
            let term = factor * inner;
            total += term;
            if m > 4 && term.norm() < 1e-18 * total.norm().max(1e-300) {
                break;
            }
            factor *= iz / (m + 1) as f64;
        }
        return total;
    }
    // ∫ p e^{izt} = e^{izt} Σ_k (−1)^k p^{(k)}(t)/(iz)^{k+1}.
    let antideriv = |t: f64| {
        let mut d = p.clone();
        let mut total = Complex64::new(0.0, 0.0);
        let mut denom = iz;
        let mut sign = 1.0;
        while !d.is_zero() {
            total += d.eval_c64(Complex64::new(t, 0.0)) * sign / denom;
            d = d.derivative();
            denom *= iz;
            sign = -sign;
        }
        total * (iz * t).exp()
    };
    antideriv(r) - antideriv(0.0)
}

/// `(𝖶𝔉)(z) = (1/π)∫₀^r (f(t)cos(tz) + g(t)sin(tz)) dt`, in closed form.
pub fn pw_weyl(r: f64, v: &PwVector, z: Complex64) -> Complex64 {
    let (fp, fm) = (poly_exp_integral(&v.f, r, z), poly_exp_integral(&v.f, r, -z));
    let (gp, gm) = (poly_exp_integral(&v.g, r, z), poly_exp_integral(&v.g, r, -z));
    let cos_part = (fp + fm) / 2.0;
    let sin_part = (gp - gm) / (2.0 * Complex64::i());
    (cos_part + sin_part) / PI
}

/// `(1/2π)∫_{−r}^{r} Ψ(t)e^{izt} dt` by quadrature.
pub fn pw_fourier_of_psi(r: f64, v: &PwVector, z: Complex64) -> Complex64 {
    let panels = ((r * (1.0 + z.norm())).ceil() as usize).max(8);
    let f = |t: f64| v.psi(t) * (Complex64::i() * z * t).exp();
    (quad::gauss_legendre(f, -r, 0.0, panels) + quad::gauss_legendre(f, 0.0, r, panels)) / (2.0 * PI)
}

/// Outcome of comparing the Weyl transform with the Fourier transform of `Ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PwWeylReport {
    /// `max |𝖶𝔉 − Ψ̂/(2π)|` over the sample points.
    pub residual: f64,
    /// `(1/π)∫₀^r |f|² + |g|²`.
    pub norm_sq: f64,
    /// `∫_{−r}^{r} |Ψ|²`.
    pub psi_norm_sq: f64,
    /// `‖Ψ‖²/‖𝔉‖²`, or `None` for the zero vector.
    pub norm_constant: Option<f64>,
}

/// Compares [`pw_weyl`] with [`pw_fourier_of_psi`] at `points` and measures
/// the constant relating the two norms.
pub fn pw_weyl_is_fourier(frame: &PWFrame, v: &PwVector, points: &[Complex64]) -> PwWeylReport {
    let r = frame.r;
    let residual = points
        .iter()
        .map(|&z| (pw_weyl(r, v, z) - pw_fourier_of_psi(r, v, z)).norm())
        .fold(0.0, f64::max);
    let panels = 16;
    let norm_sq = quad::gauss_legendre_real(
        |t| {
            let a = Complex64::new(t, 0.0);
            v.f.eval_c64(a).norm_sqr() + v.g.eval_c64(a).norm_sqr()
        },
        0.0,
        r,
        panels,
    ) / PI;
    let psi_norm_sq = quad::gauss_legendre_real(|t| v.psi(t).norm_sqr(), -r, 0.0, panels)
        + quad::gauss_legendre_real(|t| v.psi(t).norm_sqr(), 0.0, r, panels);
    let norm_constant = (norm_sq > 0.0).then(|| psi_norm_sq / norm_sq);
    PwWeylReport { residual, norm_sq, psi_norm_sq, norm_constant }
}

/// `(L_r φ)(t) = (i√π/r) Σₙ (−1)ⁿ Φ₁(φ, γₙ)[cos γₙt; sin γₙt]`, truncated to the lattice.
pub fn l_r_apply(frame: &PWFrame, phi: &TestFunction, t: f64) -> [Complex64; 2] {
    let r = frame.r;
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for n in frame.indices() {
        let g = lattice_point(r, n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let c = Complex64::i() * PI.sqrt() / r * sign * phi1(phi, g.into());
        out[0] += c * (g * t).cos();
        out[1] += c * (g * t).sin();
    }
    out
}
