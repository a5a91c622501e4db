//! De Branges spaces of polynomials.
//!
//! For a Hermite–Biehler polynomial `E` of degree `n`, `H(E)` is the space of
//! polynomials of degree `< n`. Its norm is evaluated as a finite sum over the
//! real zeros `γ` of `A = (E + E♯)/2` (of `B` when `deg A < n`):
//!
//! `⟨p, q⟩ = Σ p(γ)·conj q(γ)·π/|A(γ)B'(γ) − A'(γ)B(γ)|`.
//!
//! At zeros of `A` the weight is `μ(γ)/|E(γ)|²` with `μ(γ) = π|B(γ)/A'(γ)|`.
//! When every node is rational the frame is *exact*: inner products,
//! moments and Hankel determinants are rational multiples of powers of π.

mod extension;

pub use extension::{
    extension_eigenbasis, membership_angle, r_theta, regular_point, s_theta, s_theta_in_space,
    sl2_transform, Eigenbasis,
};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;

use crate::algebra::linalg::{det, minor};
use crate::algebra::poly::float_degree;
use crate::algebra::{
    ab_join, ab_split, hb_test, real_roots_split, ExactComplex, FloatPoly, Number, PiRational, Poly, Polynomial, Real,
    Scalar, Surd,
};
use crate::error::{Error, Result};
use crate::quad;
use crate::spectra::{level_set_masses, DiscreteMeasure};

#[derive(Clone, Debug, PartialEq)]
enum Nodes {
    /// Points and weights divided by π.
    Exact { points: Vec<BigRational>, weights: Vec<BigRational> },
    Float { points: Vec<f64>, weights: Vec<f64> },
}

/// A certified Hermite–Biehler polynomial with its `A`, `B` and level-set masses.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteBiehlerFrame {
    e: Polynomial,
    a: Polynomial,
    b: Polynomial,
    mu: DiscreteMeasure,
    nodes: Nodes,
}

impl HermiteBiehlerFrame {
    /// Fails unless all zeros of `E` lie in the open lower half-plane.
    pub fn new(e: Polynomial) -> Result<Self> {
        let n = e.degree().ok_or(Error::NotHermiteBiehler)?;
        if n > 0 && !hb_test(&e, 0.0)? {
            return Err(Error::NotHermiteBiehler);
        }
        let (a, b) = ab_split(&e);
        let mu = level_set_masses(&e)?;
        // One of A, B has degree n; its zeros carry the norm.
        let node_poly = if a.degree() == Some(n) { &a } else { &b };
        let nodes = if n == 0 {
            Nodes::Exact { points: vec![], weights: vec![] }
        } else {
            let (exact, approx) = real_roots_split(node_poly)?;
            if exact.len() + approx.len() != n {
                return Err(Error::NonSimpleLevelSet);
            }
            let wronskian = &(&a * &b.derivative()) - &(&a.derivative() * &b);
            if approx.is_empty() {
                let weights = exact
                    .iter()
                    .map(|g| wronskian.eval(&ExactComplex::real(g.clone())).re.abs().recip())
                    .collect();
                Nodes::Exact { points: exact, weights }
            } else {
                let w = wronskian.to_float();
                let points: Vec<f64> = exact.iter().map(crate::algebra::rat_to_f64).chain(approx).collect();
                let weights = points
                    .iter()
                    .map(|&g| std::f64::consts::PI / w.eval(&Complex64::new(g, 0.0)).re.abs())
                    .collect();
                Nodes::Float { points, weights }
            }
        };
        Ok(HermiteBiehlerFrame { e, a, b, mu, nodes })
    }

    /// The frame of `E = A − iB`.
    pub fn from_ab(a: &Polynomial, b: &Polynomial) -> Result<Self> {
        HermiteBiehlerFrame::new(ab_join(a, b))
    }

    /// `E₀ = z³ + 2iz² − z − i`.
    pub fn example_e0() -> Self {
        HermiteBiehlerFrame::new(e0()).expect("E0 is Hermite-Biehler")
    }

    pub fn e(&self) -> &Polynomial {
        &self.e
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn mu(&self) -> &DiscreteMeasure {
        &self.mu
    }

    /// `n = deg E = dim H(E)`.
    pub fn degree(&self) -> usize {
        self.e.degree().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.nodes, Nodes::Exact { .. })
    }

    /// Nodes with their weights, as floats.
    pub fn weighted_nodes(&self) -> Vec<(f64, f64)> {
        match &self.nodes {
            Nodes::Exact { points, weights } => points
                .iter()
                .zip(weights)
                .map(|(g, w)| (crate::algebra::rat_to_f64(g), crate::algebra::rat_to_f64(w) * std::f64::consts::PI))
                .collect(),
            Nodes::Float { points, weights } => points.iter().cloned().zip(weights.iter().cloned()).collect(),
        }
    }

    pub(crate) fn exact_nodes(&self) -> Option<(Vec<ExactComplex>, Vec<ExactComplex>)> {
        match &self.nodes {
            Nodes::Exact { points, weights } => Some((
                points.iter().cloned().map(ExactComplex::real).collect(),
                weights.iter().cloned().map(ExactComplex::real).collect(),
            )),
            Nodes::Float { .. } => None,
        }
    }

    fn float_nodes(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        self.weighted_nodes().into_iter().map(|(g, w)| (Complex64::new(g, 0.0), Complex64::new(w, 0.0))).unzip()
    }

    fn check_member(&self, d: Option<usize>) -> Result<()> {
        match d {
            Some(d) if d >= self.degree() => Err(Error::NotInSpace { degree: d, bound: self.degree() }),
            _ => Ok(()),
        }
    }
}

/// `E₀ = z³ + 2iz² − z − i`.
pub fn e0() -> Polynomial {
    Polynomial::from_int_pairs(&[(0, -1), (-1, 0), (0, 2), (1, 0)])
}

/// Monic polynomial whose `n` zeros have real parts in `[−3, 3]` and
/// imaginary parts in `[−3, −1/4]`, all with denominator 4.
pub fn random_hb_polynomial<R: Rng>(r: &mut R, n: usize) -> Polynomial {
    let mut e = Polynomial::one();
    for _ in 0..n {
        let re = crate::algebra::ratio(r.gen_range(-12..=12), 4);
        let im = crate::algebra::ratio(-r.gen_range(1..=12), 4);
        e = &e * &Polynomial::linear_root(&ExactComplex::new(re, im));
    }
    e
}

/// Hermite–Biehler polynomial with `E(0) = −i` and zeros symmetric under
/// `z ↦ −z̄`, so that `A` is odd and `B` even. Zeros have denominator 4.
pub fn random_symmetric_hb<R: Rng>(r: &mut R, n: usize) -> Polynomial {
    let mut e = Polynomial::one();
    let im = |r: &mut R| crate::algebra::ratio(-r.gen_range(1..=12), 4);
    if n % 2 == 1 {
        e = &e * &Polynomial::linear_root(&ExactComplex::new(BigRational::from_integer(0.into()), im(r)));
    }
    for _ in 0..n / 2 {
        let re = crate::algebra::ratio(r.gen_range(1..=12), 4);
        let y = im(r);
        e = &e * &Polynomial::linear_root(&ExactComplex::new(re.clone(), y.clone()));
        e = &e * &Polynomial::linear_root(&ExactComplex::new(-re, y));
    }
    let c = &ExactComplex::from_ints(0, -1) / &e.coeff(0);
    e.scale(&c)
}

fn weighted_sum<S: Scalar>(points: &[S], weights: &[S], p: &Poly<S>, q: &Poly<S>) -> S {
    points.iter().zip(weights).fold(S::zero(), |acc, (g, w)| acc.plus(&p.eval(g).times(&q.eval(g).conj()).times(w)))
}

/// `⟨p, q⟩` in `H(E)`; exact (a multiple of π) on exact frames.
pub fn inner_product(frame: &HermiteBiehlerFrame, p: &Polynomial, q: &Polynomial) -> Result<Number> {
    frame.check_member(p.degree())?;
    frame.check_member(q.degree())?;
    Ok(match frame.exact_nodes() {
        Some((pts, wts)) => Number::exact(weighted_sum(&pts, &wts, p, q), 1),
        None => {
            let (pts, wts) = frame.float_nodes();
            Number::Float(weighted_sum(&pts, &wts, &p.to_float(), &q.to_float()))
        }
    })
}

/// Floating-point `⟨p, q⟩`.
pub fn inner_product_float(frame: &HermiteBiehlerFrame, p: &FloatPoly, q: &FloatPoly) -> Result<Complex64> {
    frame.check_member(float_degree(p))?;
    frame.check_member(float_degree(q))?;
    let (pts, wts) = frame.float_nodes();
    Ok(weighted_sum(&pts, &wts, p, q))
}

/// `∫_ℝ p·conj q/|E|² dx`, by Gauss–Legendre after `x = tan s`.
pub fn line_inner_product(frame: &HermiteBiehlerFrame, p: &FloatPoly, q: &FloatPoly, panels: usize) -> Result<Complex64> {
    frame.check_member(float_degree(p))?;
    frame.check_member(float_degree(q))?;
    let e = frame.e.to_float();
    let half = std::f64::consts::FRAC_PI_2;
    Ok(quad::gauss_legendre(
        |s| {
            let x = Complex64::new(s.tan(), 0.0);
            let sec2 = 1.0 / (s.cos() * s.cos());
            p.eval(&x) * q.eval(&x).conj() / e.eval(&x).norm_sqr() * sec2
        },
        -half,
        half,
        panels,
    ))
}

/// Moments `m₀..m_{2n−2}` of the weights `μ/|E|²` and Hankel determinants
/// `H₀..H_{n−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub moments: Vec<Real>,
    pub hankel: Vec<Real>,
}

fn moment_values<S: Scalar>(points: &[S], weights: &[S], count: usize) -> Vec<S> {
    (0..count)
        .map(|k| {
            points.iter().zip(weights).fold(S::zero(), |acc, (g, w)| {
                let gk = (0..k).fold(S::one(), |x, _| x.times(g));
                acc.plus(&gk.times(w))
            })
        })
        .collect()
}

fn hankel_matrix<S: Scalar>(m: &[S], size: usize) -> Vec<Vec<S>> {
    (0..size).map(|i| (0..size).map(|j| m[i + j].clone()).collect()).collect()
}

/// Moment and Hankel table; exact entries are `q·π^k`.
pub fn moments(frame: &HermiteBiehlerFrame) -> MomentTable {
    let n = frame.degree();
    let count = if n == 0 { 0 } else { 2 * n - 1 };
    match frame.exact_nodes() {
        Some((pts, wts)) => {
            let m = moment_values(&pts, &wts, count);
            let moments = m.iter().map(|v| Real::Exact(PiRational::new(v.re.clone(), 1))).collect();
            let hankel = (1..=n)
                .map(|k| Real::Exact(PiRational::new(det(hankel_matrix(&m, k)).re, k as i32)))
                .collect();
            MomentTable { moments, hankel }
        }
        None => {
            let (pts, wts) = frame.float_nodes();
            let m = moment_values(&pts, &wts, count);
            let moments = m.iter().map(|v| Real::Float(v.re)).collect();
            let hankel = (1..=n).map(|k| Real::Float(det(hankel_matrix(&m, k)).re)).collect();
            MomentTable { moments, hankel }
        }
    }
}

/// `K(z, w) = (conj A(z)·B(w) − A(w)·conj B(z))/(π(w − conj z))`, with the
/// derivative limit on the diagonal `w = conj z`.
pub fn kernel_ab(frame: &HermiteBiehlerFrame, z: Complex64, w: Complex64) -> Complex64 {
    let a = frame.a.to_float();
    let b = frame.b.to_float();
    let zc = z.conj();
    let pi = std::f64::consts::PI;
    let den = w - zc;
    if den.norm() < 1e-9 * (1.0 + w.norm()) {
        // A and B are real, so conj A(z) = A(z̄).
        let (da, db) = (a.derivative(), b.derivative());
        return (a.eval(&zc) * db.eval(&w) - da.eval(&w) * b.eval(&zc)) / pi;
    }
    (a.eval(&z).conj() * b.eval(&w) - a.eval(&w) * b.eval(&z).conj()) / (pi * den)
}

/// Bordered-determinant kernel `−det[[M, v(w)], [v(z)*, 0]]/det M`, with
/// `M` the Hankel matrix of the moments and `v(w) = (1, w, …, wⁿ⁻¹)`.
pub fn kernel_moment(frame: &HermiteBiehlerFrame, z: Complex64, w: Complex64) -> Result<Complex64> {
    let n = frame.degree();
    let (pts, wts) = frame.float_nodes();
    let m = moment_values(&pts, &wts, 2 * n.max(1) - 1);
    let h = hankel_matrix(&m, n);
    let dh = det(h.clone());
    if dh.norm() == 0.0 {
        return Err(Error::SingularHankel);
    }
    let mut bordered: Vec<Vec<Complex64>> = h
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.push(w.powu(i as u32));
            row
        })
        .collect();
    let mut last: Vec<Complex64> = (0..n).map(|j| z.conj().powu(j as u32)).collect();
    last.push(Complex64::new(0.0, 0.0));
    bordered.push(last);
    Ok(-det(bordered) / dh)
}

/// `⟨f, K(w, ·)⟩` by the level-set sum; equals `f(w)` on `H(E)`.
pub fn reproduce_at(frame: &HermiteBiehlerFrame, f: &FloatPoly, w: Complex64) -> Result<Complex64> {
    frame.check_member(float_degree(f))?;
    Ok(frame
        .weighted_nodes()
        .into_iter()
        .map(|(g, wt)| {
            let x = Complex64::new(g, 0.0);
            f.eval(&x) * kernel_ab(frame, w, x).conj() * wt
        })
        .sum())
}

/// `scale · poly` with a real surd scale.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPoly<S: Scalar = ExactComplex> {
    pub poly: Poly<S>,
    pub scale: Surd,
}

impl<S: Scalar> ScaledPoly<S> {
    pub fn unscaled(poly: Poly<S>) -> Self {
        ScaledPoly { poly, scale: Surd::one() }
    }

    pub fn to_float(&self) -> FloatPoly {
        self.poly.to_float().scale(&Complex64::new(self.scale.to_f64(), 0.0))
    }

    /// `(q·poly, k)` when the scale is `q·π^k` and the coefficients are exact.
    pub fn as_pi_poly(&self) -> Option<(Polynomial, i32)> {
        let s = self.scale.as_pi_rational()?;
        let coeffs: Option<Vec<ExactComplex>> = self.poly.coeffs().iter().map(|c| c.to_exact()).collect();
        Some((Polynomial::new(coeffs?).scale_rational(s.coeff()), s.pi_power()))
    }
}

impl ScaledPoly {

    /// The value at `z` as `(poly(z), scale)`.
    pub fn eval_exact(&self, z: &ExactComplex) -> (ExactComplex, Surd) {
        (self.poly.eval(z), self.scale.clone())
    }
}

impl std::fmt::Display for ScaledPoly<ExactComplex> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·({})", self.scale, self.poly)
    }
}

/// An element of `H(E)`: exact with a surd scale, or floating-point.
#[derive(Clone, Debug, PartialEq)]
pub enum FramePoly {
    Exact(ScaledPoly),
    Float(FloatPoly),
}

impl FramePoly {
    pub fn to_float(&self) -> FloatPoly {
        match self {
            FramePoly::Exact(s) => s.to_float(),
            FramePoly::Float(p) => p.clone(),
        }
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.to_float().eval(&z)
    }

    pub fn as_exact(&self) -> Option<&ScaledPoly> {
        match self {
            FramePoly::Exact(s) => Some(s),
            FramePoly::Float(_) => None,
        }
    }
}

/// `⟨x, y⟩` for frame polynomials; exact when both are exact and the
/// product of their scales is `q·π^k`.
pub fn inner_product_elements(frame: &HermiteBiehlerFrame, x: &FramePoly, y: &FramePoly) -> Result<Number> {
    if let (FramePoly::Exact(a), FramePoly::Exact(b)) = (x, y) {
        if let Number::Exact { value, pi_power } = inner_product(frame, &a.poly, &b.poly)? {
            if value.is_zero() {
                return Ok(Number::zero());
            }
            if let Some(s) = (&a.scale * &b.scale).as_pi_rational() {
                return Ok(Number::exact(value, pi_power).scale(&s));
            }
            let f = Number::exact(value, pi_power).to_c64() * a.scale.to_f64() * b.scale.to_f64();
            return Ok(Number::Float(f));
        }
    }
    Ok(Number::Float(inner_product_float(frame, &x.to_float(), &y.to_float())?))
}

/// Orthonormal basis `q_k = D_k/√(H_{k−1}H_k)`, where `D_k` is the Hankel
/// determinant of order `k+1` with last row `(1, z, …, z^k)`.
pub fn gram_schmidt_basis(frame: &HermiteBiehlerFrame) -> Result<Vec<FramePoly>> {
    let n = frame.degree();
    match frame.exact_nodes() {
        Some((pts, wts)) => {
            let m = moment_values(&pts, &wts, 2 * n.max(1) - 1);
            let mut out = Vec::with_capacity(n);
            let mut h_prev = PiRational::one();
            for k in 0..n {
                let (d_k, h_k) = bordered_poly(&m, k);
                let h_k = PiRational::new(h_k.re, k as i32 + 1);
                if !h_k.is_positive() {
                    return Err(Error::SingularHankel);
                }
                // D_k carries π^k from its k×k minors.
                let radicand = &PiRational::new(BigRational::from_integer(1.into()), 2 * k as i32) / &(&h_prev * &h_k);
                out.push(FramePoly::Exact(ScaledPoly { poly: d_k, scale: Surd::sqrt_of(radicand) }));
                h_prev = h_k;
            }
            Ok(out)
        }
        None => {
            let (pts, wts) = frame.float_nodes();
            let m = moment_values(&pts, &wts, 2 * n.max(1) - 1);
            let mut out = Vec::with_capacity(n);
            let mut h_prev = 1.0;
            for k in 0..n {
                let (d_k, h_k) = bordered_poly(&m, k);
                let h_k = h_k.re;
                if !(h_k > 0.0) || h_k.abs() < 1e-300 {
                    return Err(Error::SingularHankel);
                }
                out.push(FramePoly::Float(d_k.scale(&Complex64::new(1.0 / (h_prev * h_k).sqrt(), 0.0))));
                h_prev = h_k;
            }
            Ok(out)
        }
    }
}

/// `(D_k, H_k)` from the moments.
fn bordered_poly<S: Scalar>(m: &[S], k: usize) -> (Poly<S>, S) {
    let mut rows: Vec<Vec<S>> = (0..k).map(|i| (0..=k).map(|j| m[i + j].clone()).collect()).collect();
    rows.push(vec![S::one(); k + 1]);
    let coeffs = (0..=k)
        .map(|j| {
            let c = det(minor(&rows, k, j));
            if (k + j) % 2 == 1 {
                c.negate()
            } else {
                c
            }
        })
        .collect();
    (Poly::new(coeffs), det(hankel_matrix(m, k + 1)))
}
