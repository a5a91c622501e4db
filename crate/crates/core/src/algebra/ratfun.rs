//! Reduced rational functions over exact complex rationals.

use std::fmt;

use num_complex::Complex64;

use super::poly::Polynomial;
use super::scalar::{ExactComplex, Scalar};
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` and a monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces `num/den`. Fails if `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Polynomial::one() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = ExactComplex::one().over(&lead);
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: ExactComplex) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact value, or `None` at a pole.
    pub fn eval(&self, z: &ExactComplex) -> Option<ExactComplex> {
        let d = self.den.eval(z);
        (!d.is_zero()).then(|| self.num.eval(z).over(&d))
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.num.eval_c64(z) / self.den.eval_c64(z)
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::new(num, &self.den * &o.den).expect("nonzero product")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero product")
    }

    /// Quotient; fails when `o` is identically zero.
    pub fn div(&self, o: &Self) -> Result<Self> {
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    /// `f♯(z) = conj f(conj z)`.
    pub fn sharp(&self) -> Self {
        RationalFunction::new(self.num.sharp(), self.den.sharp()).expect("nonzero denominator")
    }

    /// `deg num − deg den` (the zero function reports `None`).
    pub fn degree_excess(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().unwrap_or(0) as i64)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
