use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::pi::PiRational;
use super::scalar::{ExactComplex, Scalar};

/// A complex value that is either `c·π^k` with `c` exact or a float.
#[derive(Clone, PartialEq)]
pub enum Number {
    Exact { value: ExactComplex, pi_power: i32 },
    Float(Complex64),
}

impl Number {
    pub fn exact(value: ExactComplex, pi_power: i32) -> Number {
        let pi_power = if value.is_zero() { 0 } else { pi_power };
        Number::Exact { value, pi_power }
    }

    pub fn zero() -> Number {
        Number::exact(ExactComplex::zero(), 0)
    }

    pub fn from_pi_rational(p: &PiRational) -> Number {
        Number::exact(ExactComplex::real(p.coeff().clone()), p.pi_power())
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Number::Exact { value, pi_power } => value.to_c64() * std::f64::consts::PI.powi(*pi_power),
            Number::Float(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Exact { value, .. } => value.is_zero(),
            Number::Float(z) => *z == Complex64::new(0.0, 0.0),
        }
    }

    /// The real exact value, if any.
    pub fn as_pi_rational(&self) -> Option<PiRational> {
        match self {
            Number::Exact { value, pi_power } if value.im.is_zero() => {
                Some(PiRational::new(value.re.clone(), *pi_power))
            }
            _ => None,
        }
    }

    /// Multiplies by an exact real `q·π^k`.
    pub fn scale(&self, p: &PiRational) -> Number {
        match self {
            Number::Exact { value, pi_power } => Number::exact(value.scale(p.coeff()), pi_power + p.pi_power()),
            Number::Float(z) => Number::Float(z * p.to_f64()),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Number {
        self.scale(&PiRational::rational(q.clone()))
    }
}

impl fmt::Debug for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Exact { value, pi_power: 0 } => write!(f, "{value}"),
            Number::Exact { value, pi_power: 1 } => write!(f, "({value})·π"),
            Number::Exact { value, pi_power } => write!(f, "({value})·π^{pi_power}"),
            Number::Float(z) => write!(f, "{z}"),
        }
    }
}
