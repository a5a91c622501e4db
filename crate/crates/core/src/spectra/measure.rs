use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{PiRational, Real};
use crate::error::{Error, Result};

/// One point mass.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub point: Real,
    pub mass: Real,
}

/// Finitely many point masses on ℝ, sorted by position.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Sorts the atoms and checks distinct points and positive masses.
    pub fn new(mut atoms: Vec<Atom>) -> Result<Self> {
        atoms.sort_by(|a, b| a.point.to_f64().total_cmp(&b.point.to_f64()));
        for w in atoms.windows(2) {
            let same = match (&w[0].point, &w[1].point) {
                (Real::Exact(a), Real::Exact(b)) => a == b,
                (a, b) => a.to_f64() == b.to_f64(),
            };
            if same {
                return Err(Error::InvalidMeasure(format!("repeated point {}", w[0].point)));
            }
        }
        for a in &atoms {
            let positive = match &a.mass {
                Real::Exact(m) => m.is_positive(),
                Real::Float(m) => *m > 0.0,
            };
            if !positive || !a.point.to_f64().is_finite() {
                return Err(Error::InvalidMeasure(format!("non-positive mass at {}", a.point)));
            }
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn empty() -> Self {
        DiscreteMeasure { atoms: Vec::new() }
    }

    /// Rational points with rational masses.
    pub fn from_rationals(pairs: &[(BigRational, BigRational)]) -> Result<Self> {
        DiscreteMeasure::new(
            pairs
                .iter()
                .map(|(p, m)| Atom { point: Real::rational(p.clone()), mass: Real::rational(m.clone()) })
                .collect(),
        )
    }

    /// Float points with float masses.
    pub fn from_f64(pairs: &[(f64, f64)]) -> Result<Self> {
        DiscreteMeasure::new(
            pairs
                .iter()
                .map(|&(p, m)| Atom { point: Real::Float(p), mass: Real::Float(m) })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `(point, mass)` pairs as floats.
    pub fn to_f64_pairs(&self) -> Vec<(f64, f64)> {
        self.atoms.iter().map(|a| (a.point.to_f64(), a.mass.to_f64())).collect()
    }

    pub fn total_mass(&self) -> Real {
        self.atoms
            .iter()
            .fold(Real::Exact(PiRational::zero()), |acc, a| acc.add(&a.mass))
    }

    /// Multiplies every mass by `factor` (which must be positive).
    pub fn scale(&self, factor: &Real) -> Self {
        DiscreteMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom { point: a.point.clone(), mass: a.mass.mul(factor) })
                .collect(),
        }
    }

    /// Rational points paired with exact masses, if every atom is exact.
    pub fn exact_atoms(&self) -> Option<Vec<(BigRational, PiRational)>> {
        self.atoms
            .iter()
            .map(|a| Some((a.point.as_rational()?.clone(), a.mass.as_exact()?.clone())))
            .collect()
    }

    /// Rational points with masses `q·π^power`, returning the `q`s.
    pub fn exact_atoms_with_power(&self, power: i32) -> Option<Vec<(BigRational, BigRational)>> {
        self.exact_atoms()?
            .into_iter()
            .map(|(p, m)| (m.pi_power() == power || m.is_zero()).then(|| (p, m.coeff().clone())))
            .collect()
    }

    /// Mass at an exact rational point (zero if absent).
    pub fn mass_at_rational(&self, x: &BigRational) -> Real {
        self.atoms
            .iter()
            .find(|a| a.point.as_rational() == Some(x))
            .map(|a| a.mass.clone())
            .unwrap_or_else(|| Real::rational(BigRational::zero()))
    }

    /// `∫ f dμ` for a float integrand.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.atoms.iter().map(|a| f(a.point.to_f64()) * a.mass.to_f64()).sum()
    }
}
