//! 2×2 matrices with polynomial entries.

use num_complex::Complex64;

use super::poly::Polynomial;
use super::scalar::{ExactComplex, Scalar};

/// Plain 2×2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

/// 2×2 matrix of exact polynomials, `[[A, B], [C, D]]`.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixPolynomial {
    pub entries: [[Polynomial; 2]; 2],
}

impl MatrixPolynomial {
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> Self {
        MatrixPolynomial { entries: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        MatrixPolynomial::new(Polynomial::one(), Polynomial::zero(), Polynomial::zero(), Polynomial::one())
    }

    /// The constant matrix with the given exact entries.
    pub fn constant(m: &[[ExactComplex; 2]; 2]) -> Self {
        MatrixPolynomial {
            entries: [
                [Polynomial::constant(m[0][0].clone()), Polynomial::constant(m[0][1].clone())],
                [Polynomial::constant(m[1][0].clone()), Polynomial::constant(m[1][1].clone())],
            ],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn a(&self) -> &Polynomial {
        &self.entries[0][0]
    }
    pub fn b(&self) -> &Polynomial {
        &self.entries[0][1]
    }
    pub fn c(&self) -> &Polynomial {
        &self.entries[1][0]
    }
    pub fn d(&self) -> &Polynomial {
        &self.entries[1][1]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| {
            &(&self.entries[i][0] * &o.entries[0][j]) + &(&self.entries[i][1] * &o.entries[1][j])
        };
        MatrixPolynomial { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| &self.entries[i][j] + &o.entries[i][j];
        MatrixPolynomial { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn det(&self) -> Polynomial {
        &(&self.entries[0][0] * &self.entries[1][1]) - &(&self.entries[0][1] * &self.entries[1][0])
    }

    /// Maximum entry degree (0 for constant or zero matrices).
    pub fn degree(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Matrix of the `z^k` coefficients.
    pub fn coefficient(&self, k: usize) -> [[ExactComplex; 2]; 2] {
        let e = |i: usize, j: usize| self.entries[i][j].coeff(k);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    pub fn eval(&self, z: &ExactComplex) -> [[ExactComplex; 2]; 2] {
        let e = |i: usize, j: usize| self.entries[i][j].eval(z);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    pub fn eval_c64(&self, z: Complex64) -> Mat2 {
        let e = |i: usize, j: usize| self.entries[i][j].eval_c64(z);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// Multiplies every entry by the scalar polynomial `p`.
    pub fn scale_poly(&self, p: &Polynomial) -> Self {
        let e = |i: usize, j: usize| &self.entries[i][j] * p;
        MatrixPolynomial { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == MatrixPolynomial::identity()
    }
}

/// Product of 2×2 exact matrices.
pub fn mat_mul_exact(a: &[[ExactComplex; 2]; 2], b: &[[ExactComplex; 2]; 2]) -> [[ExactComplex; 2]; 2] {
    let e = |i: usize, j: usize| a[i][0].times(&b[0][j]).plus(&a[i][1].times(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Product of 2×2 float matrices.
pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Largest entrywise modulus of `a − b`.
pub fn mat_dist(a: &Mat2, b: &Mat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w0() -> MatrixPolynomial {
        MatrixPolynomial::new(
            Polynomial::from_ints(&[1, 0, -2]),
            Polynomial::from_ints(&[0, 4]),
            Polynomial::from_ints(&[0, -1, 0, 1]),
            Polynomial::from_ints(&[1, 0, -2]),
        )
    }

    #[test]
    fn det_of_w0_is_one() {
        assert_eq!(w0().det(), Polynomial::one());
        assert_eq!(w0().degree(), 3);
    }

    #[test]
    fn identity_is_neutral() {
        let w = w0();
        assert_eq!(w.mul(&MatrixPolynomial::identity()), w);
        assert_eq!(MatrixPolynomial::identity().mul(&w), w);
    }

    #[test]
    fn coefficient_extraction() {
        let c3 = w0().coefficient(3);
        assert_eq!(c3[1][0], ExactComplex::from(1));
        assert!(c3[0][0].is_zero());
        let v = w0().eval(&ExactComplex::from(1));
        assert_eq!(v[0][1], ExactComplex::from(4));
    }
}
