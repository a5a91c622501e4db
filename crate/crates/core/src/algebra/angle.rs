use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{parse_rational, rat, ratio};

/// An angle stored as an exact multiple of π or as radians.
#[derive(Clone, PartialEq)]
pub enum Angle {
    PiMultiple(BigRational),
    Radians(f64),
}

impl Angle {
    pub fn zero() -> Angle {
        Angle::PiMultiple(BigRational::zero())
    }

    pub fn half_pi() -> Angle {
        Angle::PiMultiple(ratio(1, 2))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Angle::PiMultiple(q) => super::rat_to_f64(q) * std::f64::consts::PI,
            Angle::Radians(x) => *x,
        }
    }

    /// Reduces into `[0, π)`.
    pub fn normalized(&self) -> Angle {
        match self {
            Angle::PiMultiple(q) => {
                let f = q - q.floor();
                Angle::PiMultiple(f)
            }
            Angle::Radians(x) => Angle::Radians(x.rem_euclid(std::f64::consts::PI)),
        }
    }

    /// `(cos θ, sin θ)` as rationals when θ is a multiple of π/2.
    pub fn exact_cos_sin(&self) -> Option<(BigRational, BigRational)> {
        let Angle::PiMultiple(q) = self else { return None };
        let two_q = q * rat(2);
        if !two_q.is_integer() {
            return None;
        }
        let k: num_bigint::BigInt = (two_q.to_integer() % 4 + 4) % 4;
        let k: i64 = k.try_into().ok()?;
        Some(match k {
            0 => (rat(1), rat(0)),
            1 => (rat(0), rat(1)),
            2 => (rat(-1), rat(0)),
            _ => (rat(0), rat(-1)),
        })
    }

    pub fn cos_sin(&self) -> (f64, f64) {
        match self.exact_cos_sin() {
            Some((c, s)) => (super::rat_to_f64(&c), super::rat_to_f64(&s)),
            None => {
                let x = self.to_f64();
                (x.cos(), x.sin())
            }
        }
    }

    /// Parses `"0"`, `"pi"`, `"pi/2"`, `"3pi/4"`, `"1/3*pi"` or a float in radians.
    pub fn parse(s: &str) -> Option<Angle> {
        let t = s.trim().replace(' ', "");
        if let Some(pos) = t.find("pi") {
            let (head, tail) = (&t[..pos], &t[pos + 2..]);
            let head = head.trim_end_matches('*');
            let num = match head {
                "" | "+" => rat(1),
                "-" => rat(-1),
                h => parse_rational(h)?,
            };
            let den = match tail.strip_prefix('/') {
                Some(d) => parse_rational(d)?,
                None if tail.is_empty() => rat(1),
                None => return None,
            };
            if den.is_zero() {
                return None;
            }
            return Some(Angle::PiMultiple(num / den));
        }
        if let Some(q) = parse_rational(&t) {
            if q.is_zero() {
                return Some(Angle::zero());
            }
        }
        t.parse::<f64>().ok().filter(|x| x.is_finite()).map(Angle::Radians)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(q) if q.is_zero() => write!(f, "0"),
            Angle::PiMultiple(q) => {
                let n = q.numer();
                let d = q.denom();
                let head = if n.is_one() {
                    String::new()
                } else if (-n).is_one() {
                    "-".to_string()
                } else {
                    n.to_string()
                };
                if d.is_one() {
                    write!(f, "{head}pi")
                } else {
                    write!(f, "{head}pi/{d}")
                }
            }
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}
