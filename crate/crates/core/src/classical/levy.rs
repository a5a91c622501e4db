//! Lévy–Khintchine triplets of screw functions and the Gaussian–Poisson
//! density of `exp g₀`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::Real;
use crate::error::{Error, Result};
use crate::quad;
use crate::screw::{eval_screw, ScrewFunctionData};
use crate::spectra::{Atom, DiscreteMeasure};

/// `(a, b, ν)` with `ν({0}) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyTriplet {
    pub a: Real,
    pub b: Real,
    pub nu: DiscreteMeasure,
}

impl LevyTriplet {
    /// Drift `b₀ = b − ∫ λ/(1 + λ²) dν` of the form without compensator.
    pub fn drift_b0(&self) -> f64 {
        self.b.to_f64() - self.nu.integrate(|l| l / (1.0 + l * l))
    }
}

/// `a = τ({0})`, `b = c`, `ν = τ/γ²` away from 0. Requires `g(0) = 0`.
pub fn levy_triplet(g: &ScrewFunctionData) -> Result<LevyTriplet> {
    if g.g0.to_f64() != 0.0 {
        return Err(Error::InvalidInput("the Lévy–Khintchine exponent needs g(0) = 0".into()));
    }
    let mut a = Real::rational(BigRational::zero());
    let mut atoms = Vec::new();
    for at in g.tau.atoms() {
        if at.point.to_f64() == 0.0 {
            a = at.mass.clone();
        } else {
            let sq = at.point.mul(&at.point);
            atoms.push(Atom { point: at.point.clone(), mass: at.mass.div(&sq) });
        }
    }
    Ok(LevyTriplet { a, b: g.c.clone(), nu: DiscreteMeasure::new(atoms)? })
}

/// The screw function with spectral measure `a·δ₀ + λ²ν` and drift `b`.
pub fn screw_from_triplet(t: &LevyTriplet) -> Result<ScrewFunctionData> {
    let mut atoms: Vec<Atom> = t
        .nu
        .atoms()
        .iter()
        .map(|at| Atom { point: at.point.clone(), mass: at.mass.mul(&at.point.mul(&at.point)) })
        .collect();
    if t.a.to_f64() > 0.0 {
        atoms.push(Atom { point: Real::rational(BigRational::zero()), mass: t.a.clone() });
    }
    Ok(ScrewFunctionData::new(Real::rational(BigRational::zero()), t.b.clone(), DiscreteMeasure::new(atoms)?))
}

/// `λ` when `ν = λδ₁ + λδ₋₁`.
fn symmetric_unit_rate(t: &LevyTriplet) -> Result<f64> {
    let pairs = t.nu.to_f64_pairs();
    match pairs.as_slice() {
        [(m1, l1), (p1, l2)] if *m1 == -1.0 && *p1 == 1.0 && l1 == l2 => Ok(*l1),
        _ => Err(Error::Unsupported("density needs ν = λδ₁ + λδ₋₁".into())),
    }
}

/// Density of `N(b₀, a) ∗ (Pois(λ) − Pois(λ))` at `x`, with both Poisson
/// sums truncated at `k, ℓ ≤ terms`:
/// `e^{−2λ} Σ λ^{k+ℓ}/(k!ℓ!) · N(x − b₀; k − ℓ, a)`.
pub fn idd_density(t: &LevyTriplet, x: f64, terms: usize) -> Result<f64> {
    let lambda = symmetric_unit_rate(t)?;
    let a = t.a.to_f64();
    if a <= 0.0 {
        return Err(Error::Unsupported("density needs a Gaussian part".into()));
    }
    let shift = x - t.drift_b0();
    let mut weights = Vec::with_capacity(terms + 1);
    let mut w = (-lambda).exp();
    for k in 0..=terms {
        weights.push(w);
        w *= lambda / (k as f64 + 1.0);
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI * a).sqrt();
    let mut total = 0.0;
    for (k, wk) in weights.iter().enumerate() {
        for (l, wl) in weights.iter().enumerate() {
            let d = shift - (k as f64 - l as f64);
            total += wk * wl * (-d * d / (2.0 * a)).exp();
        }
    }
    Ok(total * norm)
}

/// Residuals `|∫ p(x)e^{itx} dx − exp g(t)|` at the given `t`, with the density
/// truncated at 40 terms and integrated over `[−60, 60]`.
pub fn idd_charfn_check(g: &ScrewFunctionData, t_points: &[f64]) -> Result<Vec<f64>> {
    let trip = levy_triplet(g)?;
    let (lo, hi) = (-60.0, 60.0);
    let n = 6001;
    let h = (hi - lo) / (n - 1) as f64;
    let density: Vec<f64> = (0..n).map(|k| idd_density(&trip, lo + k as f64 * h, 40)).collect::<Result<_>>()?;
    let weights = quad::simpson_weights(n, h);
    Ok(t_points
        .iter()
        .map(|&t| {
            let transform: Complex64 = density
                .iter()
                .zip(&weights)
                .enumerate()
                .map(|(k, (p, w))| Complex64::new(0.0, t * (lo + k as f64 * h)).exp() * p * w)
                .sum();
            (transform - eval_screw(g, t).exp()).norm()
        })
        .collect())
}
