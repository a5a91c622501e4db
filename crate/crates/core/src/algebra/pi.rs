//! Symbolic π scalars: `q·π^k` and square roots of such values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{format_rational, rat_to_f64};

/// The real number `coeff · π^pi_power`.
///
/// Zero is normalized to power 0 so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiRational {
    coeff: BigRational,
    pi_power: i32,
}

impl PiRational {
    pub fn new(coeff: BigRational, pi_power: i32) -> Self {
        let pi_power = if coeff.is_zero() { 0 } else { pi_power };
        PiRational { coeff, pi_power }
    }

    pub fn rational(coeff: BigRational) -> Self {
        PiRational::new(coeff, 0)
    }

    /// `coeff · π`.
    pub fn pi_multiple(coeff: BigRational) -> Self {
        PiRational::new(coeff, 1)
    }

    pub fn zero() -> Self {
        PiRational::new(BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        PiRational::new(BigRational::one(), 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_power)
    }

    /// Exact sum, available when both terms carry the same power of π.
    pub fn checked_add(&self, other: &PiRational) -> Option<PiRational> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.pi_power == other.pi_power)
            .then(|| PiRational::new(&self.coeff + &other.coeff, self.pi_power))
    }

    pub fn checked_sub(&self, other: &PiRational) -> Option<PiRational> {
        self.checked_add(&-other)
    }

    pub fn inv(&self) -> PiRational {
        PiRational::new(self.coeff.recip(), -self.pi_power)
    }

    pub fn abs(&self) -> PiRational {
        PiRational::new(self.coeff.abs(), self.pi_power)
    }

    pub fn pow(&self, k: i32) -> PiRational {
        let c = if k >= 0 {
            num_traits::pow(self.coeff.clone(), k as usize)
        } else {
            num_traits::pow(self.coeff.recip(), (-k) as usize)
        };
        PiRational::new(c, self.pi_power * k)
    }

    /// Exact square root when it exists in this type.
    pub fn sqrt(&self) -> Option<PiRational> {
        if self.coeff.is_negative() || self.pi_power % 2 != 0 {
            return None;
        }
        let n = exact_isqrt(self.coeff.numer())?;
        let d = exact_isqrt(self.coeff.denom())?;
        Some(PiRational::new(BigRational::new(n, d), self.pi_power / 2))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl PartialOrd for PiRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.pi_power == other.pi_power || self.is_zero() || other.is_zero() {
            Some(self.coeff.cmp(&other.coeff))
        } else {
            self.to_f64().partial_cmp(&other.to_f64())
        }
    }
}

impl Mul for &PiRational {
    type Output = PiRational;
    fn mul(self, o: &PiRational) -> PiRational {
        PiRational::new(&self.coeff * &o.coeff, self.pi_power + o.pi_power)
    }
}

impl Mul for PiRational {
    type Output = PiRational;
    fn mul(self, o: PiRational) -> PiRational {
        &self * &o
    }
}

impl Div for &PiRational {
    type Output = PiRational;
    fn div(self, o: &PiRational) -> PiRational {
        self * &o.inv()
    }
}

impl Neg for &PiRational {
    type Output = PiRational;
    fn neg(self) -> PiRational {
        PiRational::new(-&self.coeff, self.pi_power)
    }
}

impl Neg for PiRational {
    type Output = PiRational;
    fn neg(self) -> PiRational {
        -&self
    }
}

impl fmt::Debug for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_rational(&self.coeff);
        match self.pi_power {
            0 => write!(f, "{}", c),
            1 => write!(f, "{}·π", c),
            k => write!(f, "{}·π^{}", c, k),
        }
    }
}

/// The real number `sign · √radicand` with `radicand = q·π^k ≥ 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    negative: bool,
    radicand: PiRational,
}

impl Surd {
    /// `√r` for `r ≥ 0`. Panics on a negative radicand.
    pub fn sqrt_of(r: PiRational) -> Surd {
        assert!(!r.coeff.is_negative(), "square root of a negative value");
        Surd { negative: false, radicand: r }
    }

    /// The surd equal to the given exact value.
    pub fn from_pi_rational(v: &PiRational) -> Surd {
        Surd {
            negative: v.coeff.is_negative(),
            radicand: v * v,
        }
    }

    pub fn one() -> Surd {
        Surd::sqrt_of(PiRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative && !self.is_zero()
    }

    pub fn radicand(&self) -> &PiRational {
        &self.radicand
    }

    /// `value²` with its sign: `sign · radicand`.
    pub fn signed_square(&self) -> PiRational {
        if self.negative {
            -&self.radicand
        } else {
            self.radicand.clone()
        }
    }

    pub fn neg(&self) -> Surd {
        Surd {
            negative: !self.negative,
            radicand: self.radicand.clone(),
        }
    }

    pub fn inv(&self) -> Surd {
        Surd {
            negative: self.negative,
            radicand: self.radicand.inv(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let v = self.radicand.to_f64().sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// The value as `q·π^k` when the square root is exact.
    pub fn as_pi_rational(&self) -> Option<PiRational> {
        let r = self.radicand.sqrt()?;
        Some(if self.negative { -r } else { r })
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        Surd {
            negative: self.negative != o.negative,
            radicand: &self.radicand * &o.radicand,
        }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        &self * &o
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_pi_rational() {
            return write!(f, "{}", v);
        }
        let sign = if self.negative { "-" } else { "" };
        write!(f, "{}√({})", sign, self.radicand)
    }
}
