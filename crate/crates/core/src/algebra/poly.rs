//! Dense univariate polynomials with ascending coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use super::scalar::{ExactComplex, Scalar};

/// Polynomial with coefficients in `S`, stored ascending with no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<S: Scalar> {
    coeffs: Vec<S>,
}

/// Polynomial over exact complex rationals.
pub type Polynomial = Poly<ExactComplex>;

/// Polynomial over `f64` complex numbers.
pub type FloatPoly = Poly<Complex64>;

impl<S: Scalar> Poly<S> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn x() -> Self {
        Poly::new(vec![S::zero(), S::one()])
    }

    /// `c·z^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut v = vec![S::zero(); k];
        v.push(c);
        Poly::new(v)
    }

    /// `z − a`.
    pub fn linear_root(a: &S) -> Self {
        Poly::new(vec![a.negate(), S::one()])
    }

    /// `Π (z − aₖ)`.
    pub fn from_roots(roots: &[S]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, a| &acc * &Poly::linear_root(a))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of coefficients (`degree + 1`, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc.times(z).plus(c))
    }

    /// Floating-point Horner evaluation, valid for either coefficient field.
    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&S::from_i64(k as i64)))
                .collect(),
        )
    }

    /// `p♯(z) = conj p(conj z)`: conjugates each coefficient.
    pub fn sharp(&self) -> Self {
        Poly::new(self.coeffs.iter().map(S::conj).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![S::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// `p(c·z)`.
    pub fn dilate(&self, c: &S) -> Self {
        let mut pow = S::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a.times(&pow));
            pow = pow.times(c);
        }
        Poly::new(v)
    }

    /// `p(q(z))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`. Panics if `d = 0`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].over(&lead);
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].minus(&c.times(dj));
                }
            }
            r[k + dd] = S::zero();
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Divides by a nonzero scalar so the leading coefficient becomes 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = S::one().over(l);
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u·self + v·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        match r0.leading().cloned() {
            None => (Poly::zero(), s0, t0),
            Some(l) => {
                let inv = S::one().over(&l);
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Converts coefficients to `f64` complex numbers.
    pub fn to_float(&self) -> FloatPoly {
        Poly::new(self.coeffs.iter().map(S::to_c64).collect())
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_c64().norm())
            .fold(0.0, f64::max)
    }
}

impl Polynomial {
    /// Builds from integer pairs `(re, im)` in ascending order.
    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Self {
        Poly::new(
            pairs
                .iter()
                .map(|&(a, b)| ExactComplex::from_ints(a, b))
                .collect(),
        )
    }

    /// Builds a real polynomial from integer coefficients in ascending order.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&a| ExactComplex::from(a)).collect())
    }

    pub fn from_rationals(cs: &[BigRational]) -> Self {
        Poly::new(cs.iter().cloned().map(ExactComplex::real).collect())
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(ExactComplex::is_real)
    }

    /// Real parts of the coefficients, `None` unless the polynomial is real.
    pub fn real_coeffs(&self) -> Option<Vec<BigRational>> {
        self.is_real()
            .then(|| self.coeffs.iter().map(|c| c.re.clone()).collect())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    /// Definite integral over `[a, b]` of a real-variable polynomial.
    pub fn integrate(&self, a: &BigRational, b: &BigRational) -> ExactComplex {
        let anti = self.antiderivative();
        let ea = anti.eval(&ExactComplex::real(a.clone()));
        let eb = anti.eval(&ExactComplex::real(b.clone()));
        &eb - &ea
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut v = vec![ExactComplex::default()];
        for (k, c) in self.coeffs.iter().enumerate() {
            v.push(c.scale(&BigRational::new(1.into(), ((k + 1) as i64).into())));
        }
        Poly::new(v)
    }

    /// Parity check: `Some(true)` if even, `Some(false)` if odd, `None` otherwise.
    /// The zero polynomial counts as even.
    pub fn parity(&self) -> Option<bool> {
        let even = self.coeffs.iter().skip(1).step_by(2).all(Scalar::is_zero);
        let odd = self.coeffs.iter().step_by(2).all(Scalar::is_zero);
        if even {
            Some(true)
        } else if odd {
            Some(false)
        } else {
            None
        }
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, o: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, o: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, o: &Poly<S>) -> Poly<S> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(S::negate).collect())
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $m(self, o: Poly<S>) -> Poly<S> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}·z", c)?,
                _ => write!(f, "{}·z^{}", c, k)?,
            }
        }
        Ok(())
    }
}

/// Degree ignoring coefficients below `1e−12` relative to the largest.
pub fn float_degree(p: &FloatPoly) -> Option<usize> {
    let scale = p.max_abs_coeff();
    (0..p.len()).rev().find(|&k| p.coeff(k).norm() > 1e-12 * scale)
}

/// True if every coefficient has zero real and imaginary part beyond `tol`.
pub fn float_poly_close(a: &FloatPoly, b: &FloatPoly, tol: f64) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|k| (a.coeff(k) - b.coeff(k)).norm() <= tol)
}

impl Default for Polynomial {
    fn default() -> Self {
        Poly::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::ratio;

    fn e0() -> Polynomial {
        Polynomial::from_int_pairs(&[(0, -1), (-1, 0), (0, 2), (1, 0)])
    }

    #[test]
    fn normalization_trims_zeros() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::from_ints(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn horner_matches_expanded_evaluation() {
        let p = e0();
        assert_eq!(p.eval(&ExactComplex::default()), ExactComplex::from_ints(0, -1));
        // Independent expansion at z = i: z³ = -i, 2i·z² = -2i, -z = -i, -i.
        let i = ExactComplex::i();
        let direct = &(&(&(&(&i * &i) * &i) + &(&ExactComplex::from_ints(0, 2) * &(&i * &i))) - &i)
            - &ExactComplex::i();
        assert_eq!(direct, ExactComplex::from_ints(0, -5));
        assert_eq!(p.eval(&i), direct);
        assert_eq!(Polynomial::zero().eval(&i), ExactComplex::default());
    }

    #[test]
    fn sharp_conjugates_coefficients() {
        let s = e0().sharp();
        assert_eq!(s, Polynomial::from_int_pairs(&[(0, 1), (-1, 0), (0, -2), (1, 0)]));
        assert_eq!(s.sharp(), e0());
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Polynomial::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = a.gcd(&Polynomial::from_ints(&[2, 2]));
        assert_eq!(g, b);
        let (g, u, v) = Polynomial::from_ints(&[0, -1, 0, 1]).ext_gcd(&Polynomial::from_ints(&[1, 0, -2]));
        assert_eq!(g, Polynomial::one());
        let combo = &(&u * &Polynomial::from_ints(&[0, -1, 0, 1])) + &(&v * &Polynomial::from_ints(&[1, 0, -2]));
        assert_eq!(combo, Polynomial::one());
    }

    #[test]
    fn calculus() {
        let p = Polynomial::from_ints(&[1, 0, 3]);
        assert_eq!(p.derivative(), Polynomial::from_ints(&[0, 6]));
        let i = p.integrate(&ratio(0, 1), &ratio(1, 1));
        assert_eq!(i, ExactComplex::from(2));
        assert_eq!(
            Polynomial::from_ints(&[1, 2]).compose(&Polynomial::from_ints(&[0, 0, 1])),
            Polynomial::from_ints(&[1, 0, 2])
        );
        assert_eq!(Polynomial::from_ints(&[0, 1, 0, 5]).parity(), Some(false));
        assert_eq!(Polynomial::from_ints(&[1, 1]).parity(), None);
    }
}
