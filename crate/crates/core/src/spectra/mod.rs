//! Discrete measures, Nevanlinna functions, the Cayley correspondence
//! `Q ↔ Θ`, and level-set masses of meromorphic inner functions.

mod measure;

pub use measure::{Atom, DiscreteMeasure};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{
    ab_split, hb_test, real_roots_split, roots, ExactComplex, PiRational, Polynomial,
    RationalFunction, Real, Scalar, DEFAULT_ROOT_TOL,
};
use crate::error::{Error, Result};
use crate::sampling;

/// Herglotz data `Q(z) = a·z + b + Σ m(1/(γ−z) − γ/(1+γ²))`.
#[derive(Clone, Debug, PartialEq)]
pub struct NevanlinnaData {
    pub a: Real,
    pub b: Real,
    pub measure: DiscreteMeasure,
}

impl NevanlinnaData {
    pub fn new(a: Real, b: Real, measure: DiscreteMeasure) -> Result<Self> {
        if a.to_f64() < 0.0 {
            return Err(Error::NotHerglotz("negative linear coefficient".into()));
        }
        Ok(NevanlinnaData { a, b, measure })
    }

    /// Floating-point evaluation of `Q`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut q = z * self.a.to_f64() + self.b.to_f64();
        for (g, m) in self.measure.to_f64_pairs() {
            q += m * (1.0 / (g - z) - g / (1.0 + g * g));
        }
        q
    }
}

fn rf_const(q: BigRational) -> RationalFunction {
    RationalFunction::constant(ExactComplex::real(q))
}

/// Builds `Q` as an exact reduced rational function. Requires rational
/// `a`, `b`, points and masses.
pub fn q_from_measure(d: &NevanlinnaData) -> Result<RationalFunction> {
    let need = || Error::Unsupported("exact rational Nevanlinna data required".into());
    let a = d.a.as_rational().ok_or_else(need)?;
    let b = d.b.as_rational().ok_or_else(need)?;
    let atoms = d.measure.exact_atoms_with_power(0).ok_or_else(need)?;
    let mut q = RationalFunction::from_poly(Polynomial::from_rationals(&[b.clone(), a.clone()]));
    for (g, m) in atoms {
        let pole = RationalFunction::new(
            Polynomial::constant(ExactComplex::real(m.clone())),
            Polynomial::from_rationals(&[g.clone(), -BigRational::one()]),
        )?;
        let shift = &m * &g / (BigRational::one() + &g * &g);
        q = q.add(&pole).sub(&rf_const(shift));
    }
    Ok(q)
}

/// Recovers `(a, b, τ)` from a real rational Herglotz function with simple
/// real poles. Masses are `−Res_γ Q`; `b = Re Q(i)`.
pub fn measure_from_q(q: &RationalFunction) -> Result<NevanlinnaData> {
    if !q.num().is_real() || !q.den().is_real() {
        return Err(Error::NotRealMeromorphic("complex coefficients".into()));
    }
    let excess = q.degree_excess().unwrap_or(i64::MIN);
    if excess > 1 {
        return Err(Error::NotHerglotz("polynomial growth above degree 1".into()));
    }
    let a = if excess == 1 {
        q.num().leading().expect("nonzero").re.clone() / &q.den().leading().expect("nonzero").re
    } else {
        BigRational::zero()
    };
    if a.is_negative() {
        return Err(Error::NotHerglotz("negative linear coefficient".into()));
    }
    let mut atoms = Vec::new();
    if q.den().degree().unwrap_or(0) > 0 {
        let all = roots(q.den(), DEFAULT_ROOT_TOL)?;
        let scale = 1.0 + all.iter().map(|r| r.norm()).fold(0.0, f64::max);
        if all.iter().any(|r| r.im.abs() > 1e-9 * scale) {
            return Err(Error::NotRealMeromorphic("non-real pole".into()));
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                if (all[i] - all[j]).norm() < 1e-6 * scale {
                    return Err(Error::UnsupportedMultiplicity);
                }
            }
        }
        let dden = q.den().derivative();
        let (exact, approx) = real_roots_split(q.den())?;
        for g in exact {
            let gz = ExactComplex::real(g.clone());
            let m = -(q.num().eval(&gz).over(&dden.eval(&gz))).re;
            if !m.is_positive() {
                return Err(Error::NotHerglotz(format!("negative mass at {}", g)));
            }
            atoms.push(Atom { point: Real::rational(g), mass: Real::rational(m) });
        }
        for g in approx {
            let gz = Complex64::new(g, 0.0);
            let m = -(q.num().eval_c64(gz) / dden.eval_c64(gz)).re;
            if m <= 0.0 {
                return Err(Error::NotHerglotz(format!("negative mass at {}", g)));
            }
            atoms.push(Atom { point: Real::Float(g), mass: Real::Float(m) });
        }
    }
    let q_i = q.eval(&ExactComplex::i()).ok_or_else(|| Error::NotHerglotz("pole at i".into()))?;
    let b = q_i.re;
    let data = NevanlinnaData::new(Real::rational(a), Real::rational(b), DiscreteMeasure::new(atoms)?)?;
    let mut r = sampling::rng(0x6e65);
    for _ in 0..100 {
        let z = sampling::upper_half_plane(&mut r);
        let v = q.eval_c64(z);
        if v.im < -1e-10 * (1.0 + v.norm()) {
            return Err(Error::NotHerglotz(format!("Im Q < 0 at {}", z)));
        }
    }
    Ok(data)
}

/// `Θ = (i − Q)/(i + Q)`.
pub fn cayley_q_to_theta(q: &RationalFunction) -> Result<RationalFunction> {
    let i_den = q.den().scale(&ExactComplex::i());
    let num = &i_den - q.num();
    let den = &i_den + q.num();
    if den.is_zero() {
        return Err(Error::DegenerateCayley);
    }
    RationalFunction::new(num, den)
}

/// `Q = i(1 − Θ)/(1 + Θ)`.
pub fn cayley_theta_to_q(theta: &RationalFunction) -> Result<RationalFunction> {
    let num = (theta.den() - theta.num()).scale(&ExactComplex::i());
    let den = theta.den() + theta.num();
    if den.is_zero() {
        return Err(Error::DegenerateCayley);
    }
    RationalFunction::new(num, den)
}

/// Returns `E` with `Θ = E♯/E` exactly and `E` Hermite–Biehler.
pub fn theta_to_e(theta: &RationalFunction) -> Result<Polynomial> {
    let den = theta.den();
    let ds = den.sharp();
    let c = theta.num().leading().ok_or(Error::NotInnerHbForm)?.over(ds.leading().expect("nonzero"));
    if c.norm_sqr() != BigRational::one() || *theta.num() != ds.scale(&c) {
        return Err(Error::NotInnerHbForm);
    }
    // conj(λ)/λ = c
    let lambda = if c == ExactComplex::one() {
        ExactComplex::one()
    } else if c == ExactComplex::from(-1) {
        ExactComplex::i()
    } else {
        ExactComplex::one().plus(&c.conj())
    };
    let e = den.scale(&lambda);
    if e.degree().unwrap_or(0) >= 1 && !hb_test(&e, 0.0)? {
        return Err(Error::NotHermiteBiehler);
    }
    Ok(e)
}

/// `E♯/E` as a reduced rational function.
pub fn theta_from_e(e: &Polynomial) -> Result<RationalFunction> {
    RationalFunction::new(e.sharp(), e.clone())
}

/// Point masses `π|B(γ)/A'(γ)|` at the real zeros of `A` (where `Θ = −1`).
pub fn level_set_masses(e: &Polynomial) -> Result<DiscreteMeasure> {
    let (a, b) = ab_split(e);
    let n = match a.degree() {
        None | Some(0) => return Ok(DiscreteMeasure::empty()),
        Some(n) => n,
    };
    let da = a.derivative();
    let (exact, approx) = real_roots_split(&a)?;
    if exact.len() + approx.len() != n {
        return Err(Error::NonSimpleLevelSet);
    }
    let mut atoms = Vec::with_capacity(n);
    for g in exact {
        let gz = ExactComplex::real(g.clone());
        let d = da.eval(&gz);
        if d.is_zero() {
            return Err(Error::NonSimpleLevelSet);
        }
        let m = b.eval(&gz).re / d.re;
        atoms.push(Atom { point: Real::rational(g), mass: Real::pi_multiple(m.abs()) });
    }
    for g in approx {
        let gz = Complex64::new(g, 0.0);
        let d = da.eval_c64(gz).re;
        if d.abs() < 1e-300 {
            return Err(Error::NonSimpleLevelSet);
        }
        let m = std::f64::consts::PI * (b.eval_c64(gz).re / d).abs();
        atoms.push(Atom { point: Real::Float(g), mass: Real::Float(m) });
    }
    DiscreteMeasure::new(atoms)
}

/// `Q₀(z) = (1 − 2z²)/(z³ − z)`.
pub fn example_q0() -> RationalFunction {
    RationalFunction::new(Polynomial::from_ints(&[1, 0, -2]), Polynomial::from_ints(&[0, -1, 0, 1]))
        .expect("nonzero denominator")
}

/// `τ = μ/π`.
pub fn tau_from_mu(mu: &DiscreteMeasure) -> DiscreteMeasure {
    mu.scale(&Real::Exact(PiRational::new(BigRational::one(), -1)))
}

/// `μ = π·τ`.
pub fn mu_from_tau(tau: &DiscreteMeasure) -> DiscreteMeasure {
    tau.scale(&Real::pi_multiple(BigRational::one()))
}
