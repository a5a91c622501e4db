//! Real values that stay exact (`q·π^k`) when possible and fall back to `f64`.

use std::fmt;

use num_rational::BigRational;

use super::pi::PiRational;

/// A real number, exact when known in closed form.
#[derive(Clone, PartialEq)]
pub enum Real {
    Exact(PiRational),
    Float(f64),
}

impl Real {
    pub fn rational(q: BigRational) -> Real {
        Real::Exact(PiRational::rational(q))
    }

    pub fn pi_multiple(q: BigRational) -> Real {
        Real::Exact(PiRational::pi_multiple(q))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(p) => p.to_f64(),
            Real::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&PiRational> {
        match self {
            Real::Exact(p) => Some(p),
            Real::Float(_) => None,
        }
    }

    /// The rational value when exact with no π factor.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(p) if p.pi_power() == 0 => Some(p.coeff()),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn mul(&self, o: &Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => Real::Float(self.to_f64() * o.to_f64()),
        }
    }

    pub fn div(&self, o: &Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a / b),
            _ => Real::Float(self.to_f64() / o.to_f64()),
        }
    }

    /// Sum, exact when both terms share a power of π.
    pub fn add(&self, o: &Real) -> Real {
        if let (Real::Exact(a), Real::Exact(b)) = (self, o) {
            if let Some(s) = a.checked_add(b) {
                return Real::Exact(s);
            }
        }
        Real::Float(self.to_f64() + o.to_f64())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Float(x) => Real::Float(-x),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(p) => write!(f, "{}", p),
            Real::Float(x) => write!(f, "{}", x),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::Float(x)
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Self {
        Real::rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, ratio};

    #[test]
    fn exactness_is_kept_when_possible() {
        let a = Real::pi_multiple(ratio(1, 2));
        let b = Real::pi_multiple(rat(1));
        assert_eq!(a.add(&b), Real::pi_multiple(ratio(3, 2)));
        let c = a.add(&Real::rational(rat(1)));
        assert!(!c.is_exact());
        assert!((c.to_f64() - (std::f64::consts::PI / 2.0 + 1.0)).abs() < 1e-15);
        assert_eq!(b.div(&Real::pi_multiple(rat(1))).as_rational(), Some(&rat(1)));
    }
}
