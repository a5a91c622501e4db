//! `S_θ`, the self-adjoint extensions `M_θ` and the `SL₂(ℝ)` action.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{inner_product, inner_product_float, FramePoly, HermiteBiehlerFrame, ScaledPoly};
use crate::algebra::poly::float_degree;
use crate::algebra::{
    real_roots_split, roots, Angle, ExactComplex, FloatPoly, Number, Polynomial, Real, Surd, DEFAULT_ROOT_TOL,
};
use crate::error::{Error, Result};

/// `R_θ = sin θ·A − cos θ·B`, so that `S_θ = 2i·R_θ`.
pub fn r_theta(frame: &HermiteBiehlerFrame, theta: &Angle) -> FramePoly {
    match theta.exact_cos_sin() {
        Some((c, s)) => {
            let p = &frame.a.scale_rational(&s) - &frame.b.scale_rational(&c);
            FramePoly::Exact(ScaledPoly::unscaled(p))
        }
        None => {
            let (c, s) = theta.cos_sin();
            let a = frame.a.to_float().scale(&Complex64::new(s, 0.0));
            let b = frame.b.to_float().scale(&Complex64::new(c, 0.0));
            FramePoly::Float(&a - &b)
        }
    }
}

/// `S_θ = e^{iθ}E − e^{−iθ}E♯`.
pub fn s_theta(frame: &HermiteBiehlerFrame, theta: &Angle) -> FramePoly {
    match r_theta(frame, theta) {
        FramePoly::Exact(s) => FramePoly::Exact(ScaledPoly::unscaled(s.poly.scale(&ExactComplex::from_ints(0, 2)))),
        FramePoly::Float(p) => FramePoly::Float(p.scale(&Complex64::new(0.0, 2.0))),
    }
}

/// `deg S_θ < deg E`.
pub fn s_theta_in_space(frame: &HermiteBiehlerFrame, theta: &Angle) -> bool {
    let d = match r_theta(frame, theta) {
        FramePoly::Exact(s) => s.poly.degree(),
        FramePoly::Float(p) => float_degree(&p),
    };
    d.map_or(true, |d| d < frame.degree())
}

/// The unique `θ ∈ [0, π)` with `S_θ ∈ H(E)`: `sin θ·aₙ = cos θ·bₙ` for the
/// leading coefficients of `A`, `B`.
pub fn membership_angle(frame: &HermiteBiehlerFrame) -> Angle {
    let n = frame.degree();
    let an = frame.a.coeff(n).re;
    let bn = frame.b.coeff(n).re;
    if bn.is_zero() {
        Angle::zero()
    } else if an.is_zero() {
        Angle::half_pi()
    } else {
        let t = crate::algebra::rat_to_f64(&(bn / an));
        Angle::Radians(t.atan()).normalized()
    }
}

/// Fixed regular point for the extension `M_θ`: `i`, or `2i` if `S_θ(i) = 0`.
pub fn regular_point(frame: &HermiteBiehlerFrame, theta: &Angle) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if s_theta(frame, theta).eval_c64(i).norm() < 1e-12 {
        2.0 * i
    } else {
        i
    }
}

/// Spectrum and eigenfunctions of `M_θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenbasis {
    pub eigenvalues: Vec<Real>,
    /// `S_θ(z)/(z − γ)`, followed by `S_θ` itself when it lies in `H(E)`.
    pub eigenfunctions: Vec<FramePoly>,
    /// Unit-norm positive multiples of `R_θ(z)/(z − γ)` (and of `R_θ`).
    pub normalized: Vec<FramePoly>,
}

/// Eigenbasis of `M_θ`, exact when θ is a multiple of π/2, the frame is exact
/// and every zero of `R_θ` is rational.
pub fn extension_eigenbasis(frame: &HermiteBiehlerFrame, theta: &Angle) -> Result<Eigenbasis> {
    let in_space = s_theta_in_space(frame, theta);
    if let FramePoly::Exact(r) = r_theta(frame, theta) {
        let d = r.poly.degree().unwrap_or(0);
        let (exact, approx) = real_roots_split(&r.poly)?;
        if frame.is_exact() && approx.is_empty() && exact.len() == d {
            return exact_eigenbasis(frame, &r.poly, &exact, in_space);
        }
    }
    let r = r_theta(frame, theta).to_float();
    let rs = if float_degree(&r).unwrap_or(0) == 0 { vec![] } else { roots(&trim(&r), DEFAULT_ROOT_TOL)? };
    let scale = 1.0 + rs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(z) = rs.iter().find(|z| z.im.abs() > 1e-7 * scale) {
        return Err(Error::Eigenbasis(format!("S_θ has a non-real zero {z}")));
    }
    let two_i = Complex64::new(0.0, 2.0);
    let mut eigenvalues = Vec::new();
    let mut eigenfunctions = Vec::new();
    let mut normalized = Vec::new();
    let mut push = |p: FloatPoly| -> Result<()> {
        let nrm = inner_product_float(frame, &p, &p)?.re.sqrt();
        eigenfunctions.push(FramePoly::Float(p.scale(&two_i)));
        normalized.push(FramePoly::Float(p.scale(&Complex64::new(1.0 / nrm, 0.0))));
        Ok(())
    };
    for g in &rs {
        eigenvalues.push(Real::Float(g.re));
        push(trim(&r).div_rem(&FloatPoly::linear_root(&Complex64::new(g.re, 0.0))).0)?;
    }
    if in_space {
        push(trim(&r))?;
    }
    Ok(Eigenbasis { eigenvalues, eigenfunctions, normalized })
}

fn trim(p: &FloatPoly) -> FloatPoly {
    let d = float_degree(p).map_or(0, |d| d + 1);
    FloatPoly::new(p.coeffs()[..d.min(p.len())].to_vec())
}

fn exact_eigenbasis(
    frame: &HermiteBiehlerFrame,
    r: &Polynomial,
    zeros: &[BigRational],
    in_space: bool,
) -> Result<Eigenbasis> {
    let mut eigenvalues = Vec::new();
    let mut eigenfunctions = Vec::new();
    let mut normalized = Vec::new();
    let mut push = |p: Polynomial| -> Result<()> {
        let nrm = match inner_product(frame, &p, &p)? {
            Number::Exact { value, pi_power } => crate::algebra::PiRational::new(value.re, pi_power),
            Number::Float(_) => unreachable!("exact frame"),
        };
        eigenfunctions.push(FramePoly::Exact(ScaledPoly::unscaled(p.scale(&ExactComplex::from_ints(0, 2)))));
        normalized.push(FramePoly::Exact(ScaledPoly { poly: p, scale: Surd::sqrt_of(nrm.inv()) }));
        Ok(())
    };
    for g in zeros {
        eigenvalues.push(Real::rational(g.clone()));
        let lin = Polynomial::from_rationals(&[-g.clone(), BigRational::one()]);
        push(r.div_rem(&lin).0)?;
    }
    if in_space && !r.is_zero() {
        push(r.clone())?;
    }
    Ok(Eigenbasis { eigenvalues, eigenfunctions, normalized })
}

/// `(A', B') = M·(A, B)` for `M ∈ SL₂(ℚ)`.
pub fn sl2_transform(frame: &HermiteBiehlerFrame, m: &[[BigRational; 2]; 2]) -> Result<HermiteBiehlerFrame> {
    if &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] != BigRational::one() {
        return Err(Error::DeterminantNotOne);
    }
    let a = &frame.a.scale_rational(&m[0][0]) + &frame.b.scale_rational(&m[0][1]);
    let b = &frame.a.scale_rational(&m[1][0]) + &frame.b.scale_rational(&m[1][1]);
    HermiteBiehlerFrame::from_ab(&a, &b)
}
