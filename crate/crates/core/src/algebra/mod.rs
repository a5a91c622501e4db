//! Exact scalar, polynomial, rational-function and 2×2 matrix-polynomial
//! arithmetic, plus floating-point root finding.

pub mod angle;
pub mod linalg;
pub mod matpoly;
pub mod number;
pub mod pi;
pub mod poly;
pub mod ratfun;
pub mod real;
pub mod roots;
pub mod scalar;

pub use angle::Angle;
pub use matpoly::{Mat2, MatrixPolynomial};
pub use number::Number;
pub use pi::{PiRational, Surd};
pub use poly::{FloatPoly, Poly, Polynomial};
pub use ratfun::RationalFunction;
pub use real::Real;
pub use roots::{hb_test, partial_fractions, real_roots_split, roots, PartialFractions, DEFAULT_ROOT_TOL};
pub use scalar::{format_rational, parse_rational, rat, rat_to_f64, ratio, ExactComplex, Scalar};

use num_rational::BigRational;

/// Evaluation mode for [`poly_eval`].
#[derive(Clone, Debug)]
pub enum EvalPoint {
    Exact(ExactComplex),
    Float(num_complex::Complex64),
}

/// Horner evaluation in exact or floating-point mode.
pub fn poly_eval(p: &Polynomial, z: &EvalPoint) -> EvalPoint {
    match z {
        EvalPoint::Exact(z) => EvalPoint::Exact(p.eval(z)),
        EvalPoint::Float(z) => EvalPoint::Float(p.eval_c64(*z)),
    }
}

/// `E♯(z) = conj E(conj z)`.
pub fn sharp(p: &Polynomial) -> Polynomial {
    p.sharp()
}

/// Splits `E = A − iB` with `A = (E + E♯)/2`, `B = i(E − E♯)/2`.
pub fn ab_split(e: &Polynomial) -> (Polynomial, Polynomial) {
    let es = e.sharp();
    let half = ExactComplex::real(ratio(1, 2));
    let a = (e + &es).scale(&half);
    let b = (e - &es).scale(&ExactComplex::new(rat(0), ratio(1, 2)));
    (a, b)
}

/// Inverse of [`ab_split`]: `A − iB`.
pub fn ab_join(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a - &b.scale(&ExactComplex::i())
}

/// Real rational coefficients as a polynomial.
pub fn real_poly(cs: &[BigRational]) -> Polynomial {
    Polynomial::from_rationals(cs)
}
