//! Transfer matrices `W = [[A, B], [C, D]]`, their Bezout completion and
//! factorization into elementary factors `I − zMJ`, and the resulting
//! piecewise-constant Hamiltonians.

mod hamiltonian;

pub use hamiltonian::{
    fundamental_solution, fundamental_solution_at, regular_points, segment_solutions, subspace_chain,
    ChainLink, Hamiltonian, Projector, Segment, SegmentSolution,
};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{ExactComplex, MatrixPolynomial, Polynomial, Scalar};
use crate::debranges::HermiteBiehlerFrame;
use crate::error::{Error, Result};
use crate::sampling;

/// Exact real 2×2 matrix.
pub type RatMat = [[BigRational; 2]; 2];

/// `J = [[0, −1], [1, 0]]`.
pub fn j_matrix() -> RatMat {
    [[BigRational::zero(), -BigRational::one()], [BigRational::one(), BigRational::zero()]]
}

fn rmul(a: &RatMat, b: &RatMat) -> RatMat {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn rzero(a: &RatMat) -> bool {
    a.iter().flatten().all(Zero::is_zero)
}

fn to_poly_matrix(m: &RatMat, z_power: usize) -> MatrixPolynomial {
    let e = |i: usize, j: usize| Polynomial::monomial(ExactComplex::real(m[i][j].clone()), z_power);
    MatrixPolynomial::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

fn real_coefficient(w: &MatrixPolynomial, k: usize) -> Result<RatMat> {
    let c = w.coefficient(k);
    let r = |i: usize, j: usize| -> Result<BigRational> {
        if c[i][j].is_real() {
            Ok(c[i][j].re.clone())
        } else {
            Err(Error::InvalidTransfer("entries must have real coefficients".into()))
        }
    };
    Ok([[r(0, 0)?, r(0, 1)?], [r(1, 0)?, r(1, 1)?]])
}

/// Outcome of [`validate_transfer`].
#[derive(Clone, Debug, PartialEq)]
pub struct TransferValidation {
    pub identity_at_zero: bool,
    pub det_one: bool,
    /// `min Re[A·conj D − B·conj C] − 1` over the samples.
    pub re_margin: f64,
    /// `min (B·conj A − A·conj B)/(z − z̄)`.
    pub ab_quotient: f64,
    /// `min (D·conj C − C·conj D)/(z − z̄)`.
    pub cd_quotient: f64,
    pub pass: bool,
    pub reason: Option<String>,
}

impl TransferValidation {
    pub fn into_result(self) -> Result<()> {
        match self.reason {
            None => Ok(()),
            Some(r) => Err(Error::InvalidTransfer(r)),
        }
    }
}

/// Sampled tolerance for the inequality checks.
pub const TRANSFER_TOL: f64 = 1e-10;

/// Exact `W(0) = I` and `det W ≡ 1`, and the three J-contractivity
/// inequalities at `samples` seeded points of the upper half-plane.
pub fn validate_transfer(w: &MatrixPolynomial, samples: usize, seed: u64) -> TransferValidation {
    let identity_at_zero = w.eval(&ExactComplex::zero()) == MatrixPolynomial::identity().eval(&ExactComplex::zero());
    let det_one = w.det() == Polynomial::one();
    let mut r = sampling::rng(seed);
    let (mut re_margin, mut ab_quotient, mut cd_quotient) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for _ in 0..samples {
        let z = sampling::upper_half_plane(&mut r);
        let m = w.eval_c64(z);
        let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
        let scale = 1.0 + m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>();
        let zz = z - z.conj();
        re_margin = re_margin.min(((a * d.conj() - b * c.conj()).re - 1.0) / scale);
        ab_quotient = ab_quotient.min(((b * a.conj() - a * b.conj()) / zz).re / scale);
        cd_quotient = cd_quotient.min(((d * c.conj() - c * d.conj()) / zz).re / scale);
    }
    let reason = if !identity_at_zero {
        Some("W(0) ≠ I".to_string())
    } else if !det_one {
        Some(format!("det W = {} ≠ 1", w.det()))
    } else if re_margin < -TRANSFER_TOL {
        Some(format!("Re[A·conj D − B·conj C] < 1 (margin {re_margin:e})"))
    } else if ab_quotient < -TRANSFER_TOL {
        Some(format!("(B·conj A − A·conj B)/(z − z̄) < 0 ({ab_quotient:e})"))
    } else if cd_quotient < -TRANSFER_TOL {
        Some(format!("(D·conj C − C·conj D)/(z − z̄) < 0 ({cd_quotient:e})"))
    } else {
        None
    };
    TransferValidation {
        identity_at_zero,
        det_one,
        re_margin: if samples == 0 { 0.0 } else { re_margin },
        ab_quotient: if samples == 0 { 0.0 } else { ab_quotient },
        cd_quotient: if samples == 0 { 0.0 } else { cd_quotient },
        pass: reason.is_none(),
        reason,
    }
}

/// Solves `A·D − B·C = 1` with `deg A < deg C` by the extended Euclidean
/// algorithm.
pub fn bezout_solve(c: &Polynomial, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    if c.is_zero() && d.is_zero() {
        return Err(Error::NotCoprime);
    }
    let (g, u, v) = d.ext_gcd(c);
    if g.degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let inv = g.coeff(0).inv();
    let mut a = u.scale(&inv);
    let mut b = -&v.scale(&inv);
    if c.degree().is_some_and(|dc| dc > 0) {
        let (k, rem) = a.div_rem(c);
        a = rem;
        b = &b - &(&k * d);
    }
    Ok((a, b))
}

/// Completes `(C, D)` to a transfer matrix `[[A, B], [C, D]]` and validates it.
pub fn bezout_complete(c: &Polynomial, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    if !c.is_real() || !d.is_real() {
        return Err(Error::InvalidInput("C and D must be real polynomials".into()));
    }
    let (a, b) = bezout_solve(c, d)?;
    validated_completion(a, b, c, d)
}

fn validated_completion(a: Polynomial, b: Polynomial, c: &Polynomial, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let w = MatrixPolynomial::new(a.clone(), b.clone(), c.clone(), d.clone());
    let v = validate_transfer(&w, 64, 0);
    match v.reason {
        None => Ok((a, b)),
        Some(r) => Err(Error::CompletionNotJInner(r)),
    }
}

/// Transfer matrix of a frame: `(C, D) = (A_E, B_E)` completed by Bezout.
///
/// When `E(0) = −i` but `B_E` is not even, the Euclid solution has
/// `W(0) = [[1, β], [0, 1]]`; the row operation `A −= βC`, `B −= βD` brings
/// `W(0)` to `I` and keeps `W` J-contractive.
pub fn transfer_matrix(frame: &HermiteBiehlerFrame) -> Result<MatrixPolynomial> {
    let (c, d) = (frame.a().clone(), frame.b().clone());
    let (mut a, mut b) = bezout_solve(&c, &d)?;
    if c.coeff(0).is_zero() && d.coeff(0) == ExactComplex::from(1) {
        let beta = b.coeff(0);
        a = &a - &c.scale(&beta);
        b = &b - &d.scale(&beta);
    }
    let (a, b) = validated_completion(a, b, &c, &d)?;
    Ok(MatrixPolynomial::new(a, b, c, d))
}

/// `W₀ = [[1 − 2z², 4z], [z³ − z, 1 − 2z²]]`.
pub fn example_w0() -> MatrixPolynomial {
    MatrixPolynomial::new(
        Polynomial::from_ints(&[1, 0, -2]),
        Polynomial::from_ints(&[0, 4]),
        Polynomial::from_ints(&[0, -1, 0, 1]),
        Polynomial::from_ints(&[1, 0, -2]),
    )
}

/// Symmetric rank-one PSD matrix `[[α, β], [β, γ]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryFactor {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
}

impl ElementaryFactor {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Result<Self> {
        if alpha.is_negative() || gamma.is_negative() || &alpha * &gamma != &beta * &beta {
            return Err(Error::NotFactorable("factor must be PSD with zero determinant".into()));
        }
        if alpha.is_zero() && gamma.is_zero() {
            return Err(Error::NotFactorable("zero factor".into()));
        }
        Ok(ElementaryFactor { alpha, beta, gamma })
    }

    pub fn matrix(&self) -> RatMat {
        [[self.alpha.clone(), self.beta.clone()], [self.beta.clone(), self.gamma.clone()]]
    }

    /// `α + γ`, the length of the segment it produces.
    pub fn trace(&self) -> BigRational {
        &self.alpha + &self.gamma
    }

    /// `I − zMJ`.
    pub fn to_matrix_polynomial(&self) -> MatrixPolynomial {
        let mj = rmul(&self.matrix(), &j_matrix());
        let neg = mj.map(|row| row.map(|x| -x));
        MatrixPolynomial::identity().add(&to_poly_matrix(&neg, 1))
    }

    /// `αγ' + γα' − 2ββ'`, positive iff the two factors have different types.
    pub fn coupling(&self, prev: &ElementaryFactor) -> BigRational {
        &self.alpha * &prev.gamma + &self.gamma * &prev.alpha - BigRational::from_integer(2.into()) * &self.beta * &prev.beta
    }
}

fn factor_from_mj(mj: &RatMat) -> Option<(BigRational, BigRational, BigRational)> {
    // MJ = [[β, −α], [γ, −β]].
    (mj[0][0] == -mj[1][1].clone()).then(|| (-mj[0][1].clone(), mj[0][0].clone(), mj[1][0].clone()))
}

fn mj_of(alpha: &BigRational, beta: &BigRational, gamma: &BigRational) -> RatMat {
    [[beta.clone(), -alpha.clone()], [gamma.clone(), -beta.clone()]]
}

/// Unique rational solution of `M·x = y`, if any.
fn solve_unique(mut m: Vec<Vec<BigRational>>, mut y: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..cols {
        let p = (row..m.len()).find(|&r| !m[r][col].is_zero())?;
        m.swap(row, p);
        y.swap(row, p);
        let piv = m[row][col].clone();
        for c in 0..cols {
            m[row][c] = &m[row][c] / &piv;
        }
        y[row] = &y[row] / &piv;
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let v = &m[r][c] - &f * &m[row][c];
                    m[r][c] = v;
                }
                y[r] = &y[r] - &f * &y[row];
            }
        }
        row += 1;
    }
    y[row..].iter().all(Zero::is_zero).then(|| y[..cols].to_vec())
}

/// Removes the rightmost factor: `W = V·(I − zMJ)` with `deg V = deg W − 1`.
pub fn peel_factor(w: &MatrixPolynomial) -> Result<(MatrixPolynomial, ElementaryFactor)> {
    let r = w.degree();
    if r == 0 {
        return Err(Error::NotFactorable("degree 0 matrix has no factor".into()));
    }
    let wr = real_coefficient(w, r)?;
    let wr1 = real_coefficient(w, r - 1)?;
    let not_form = || Error::NotFactorable("matrix is not of canonical-product form".into());
    let det = &wr1[0][0] * &wr1[1][1] - &wr1[0][1] * &wr1[1][0];
    let mut candidate = None;
    if !det.is_zero() {
        let inv = [[&wr1[1][1] / &det, -&wr1[0][1] / &det], [-&wr1[1][0] / &det, &wr1[0][0] / &det]];
        let mj = rmul(&inv, &wr).map(|row| row.map(|x| -x));
        candidate = factor_from_mj(&mj);
    }
    if candidate.is_none() {
        // W_r·MJ = 0 and W_r + W_{r−1}·MJ = 0, linear in (α, β, γ).
        let basis = [
            mj_of(&BigRational::one(), &BigRational::zero(), &BigRational::zero()),
            mj_of(&BigRational::zero(), &BigRational::one(), &BigRational::zero()),
            mj_of(&BigRational::zero(), &BigRational::zero(), &BigRational::one()),
        ];
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (lhs, target) in [(&wr, None), (&wr1, Some(&wr))] {
            let prods: Vec<RatMat> = basis.iter().map(|b| rmul(lhs, b)).collect();
            for i in 0..2 {
                for j in 0..2 {
                    rows.push(prods.iter().map(|p| p[i][j].clone()).collect());
                    rhs.push(target.map_or_else(BigRational::zero, |t| -t[i][j].clone()));
                }
            }
        }
        let x = solve_unique(rows, rhs).ok_or_else(not_form)?;
        candidate = Some((x[0].clone(), x[1].clone(), x[2].clone()));
    }
    let (alpha, beta, gamma) = candidate.ok_or_else(not_form)?;
    let factor = ElementaryFactor::new(alpha, beta, gamma).map_err(|_| not_form())?;
    let mj = rmul(&factor.matrix(), &j_matrix());
    let v = w.mul(&MatrixPolynomial::identity().add(&to_poly_matrix(&mj, 1)));
    if v.degree() != r - 1 || !rzero(&real_coefficient(&v, r)?) {
        return Err(not_form());
    }
    Ok((v, factor))
}

/// Factors `W = (I − zM₁J)⋯(I − zM_rJ)` and returns the Hamiltonian with
/// segment lengths `αₖ + γₖ` and projectors `Mₖ/(αₖ + γₖ)`.
pub fn factorize(w: &MatrixPolynomial) -> Result<Hamiltonian> {
    validate_transfer(w, 64, 0).into_result()?;
    Hamiltonian::from_factors(&factor_list(w)?)
}

/// The elementary factors `M₁, …, M_r` from left to right.
pub fn factor_list(w: &MatrixPolynomial) -> Result<Vec<ElementaryFactor>> {
    let mut rest = w.clone();
    let mut factors = Vec::new();
    while rest.degree() > 0 {
        let (v, m) = peel_factor(&rest)?;
        factors.push(m);
        rest = v;
    }
    if !rest.is_identity() {
        return Err(Error::NotFactorable("remainder is not the identity".into()));
    }
    factors.reverse();
    for k in 1..factors.len() {
        if !factors[k].coupling(&factors[k - 1]).is_positive() {
            return Err(Error::EqualAdjacentTypes(k + 1));
        }
    }
    Ok(factors)
}

/// `W(z)` evaluated as floats.
pub fn eval_transfer(w: &MatrixPolynomial, z: Complex64) -> crate::algebra::Mat2 {
    w.eval_c64(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::sampling;
    use rand::Rng;

    #[test]
    fn w0_is_a_transfer_matrix() {
        assert!(validate_transfer(&example_w0(), 50, 1).pass);
        assert!(validate_transfer(&MatrixPolynomial::identity(), 10, 1).pass);
        let mut bad = example_w0();
        bad.entries[0][1] = -&bad.entries[0][1];
        let v = validate_transfer(&bad, 10, 1);
        assert!(!v.det_one && !v.pass);
        assert!(matches!(v.into_result(), Err(Error::InvalidTransfer(_))));
    }

    #[test]
    fn bezout_examples() {
        let c = Polynomial::from_ints(&[0, -1, 0, 1]);
        let d = Polynomial::from_ints(&[1, 0, -2]);
        let (a, b) = bezout_complete(&c, &d).unwrap();
        assert_eq!((a, b), (Polynomial::from_ints(&[1, 0, -2]), Polynomial::from_ints(&[0, 4])));
        let (a, b) = bezout_solve(&Polynomial::x(), &Polynomial::one()).unwrap();
        assert_eq!((a, b), (Polynomial::one(), Polynomial::zero()));
        // [[1, 0], [z, 1]] has γ = −1: the completion exists but is not J-inner.
        assert!(matches!(bezout_complete(&Polynomial::x(), &Polynomial::one()), Err(Error::CompletionNotJInner(_))));
        let (a, b) = bezout_complete(&-&Polynomial::x(), &Polynomial::one()).unwrap();
        assert_eq!((a, b), (Polynomial::one(), Polynomial::zero()));
        let c2 = Polynomial::from_ints(&[0, 1, 1]);
        assert_eq!(bezout_solve(&c2, &Polynomial::from_ints(&[0, 1])), Err(Error::NotCoprime));
    }

    #[test]
    fn bezout_identity_for_random_pairs() {
        let mut r = sampling::rng(4);
        for _ in 0..20 {
            let c: Vec<BigRational> = (0..4).map(|k| if k == 0 { rat(0) } else { ratio(r.gen_range(-9..=9), r.gen_range(1..=5)) }).collect();
            let d: Vec<BigRational> = (0..3).map(|k| if k == 0 { rat(1) } else { ratio(r.gen_range(-9..=9), r.gen_range(1..=5)) }).collect();
            let (c, d) = (Polynomial::from_rationals(&c), Polynomial::from_rationals(&d));
            match bezout_solve(&c, &d) {
                Ok((a, b)) => {
                    assert_eq!(&(&a * &d) - &(&b * &c), Polynomial::one());
                    assert!(a.degree().unwrap_or(0) < c.degree().unwrap_or(1).max(1));
                }
                Err(e) => assert_eq!(e, Error::NotCoprime),
            }
        }
    }

    #[test]
    fn peel_w0() {
        let (v, m) = peel_factor(&example_w0()).unwrap();
        assert_eq!(m, ElementaryFactor::new(rat(0), rat(0), ratio(1, 2)).unwrap());
        let want_v = MatrixPolynomial::new(
            Polynomial::one(),
            Polynomial::from_ints(&[0, 4]),
            Polynomial::from_rationals(&[rat(0), ratio(-1, 2)]),
            Polynomial::from_ints(&[1, 0, -2]),
        );
        assert_eq!(v, want_v);
        let (v2, m2) = peel_factor(&v).unwrap();
        assert_eq!(m2, ElementaryFactor::new(rat(4), rat(0), rat(0)).unwrap());
        assert_eq!(
            v2,
            MatrixPolynomial::new(Polynomial::one(), Polynomial::zero(), Polynomial::from_rationals(&[rat(0), ratio(-1, 2)]), Polynomial::one())
        );
    }

    #[test]
    fn single_factor_round_trip() {
        let mut r = sampling::rng(8);
        for _ in 0..10 {
            // Rank one: (p, q)ᵀ(p, q).
            let p = ratio(r.gen_range(-5..=5), r.gen_range(1..=4));
            let q = ratio(r.gen_range(1..=5), r.gen_range(1..=4));
            let m = ElementaryFactor::new(&p * &p, &p * &q, &q * &q).unwrap();
            let (v, got) = peel_factor(&m.to_matrix_polynomial()).unwrap();
            assert!(v.is_identity());
            assert_eq!(got, m);
        }
    }

    #[test]
    fn factorize_w0() {
        let h = factorize(&example_w0()).unwrap();
        let got: Vec<(BigRational, String)> = h.segments().iter().map(|s| (s.length.clone(), s.theta.to_string())).collect();
        assert_eq!(got, vec![(ratio(1, 2), "pi/2".into()), (rat(4), "0".into()), (ratio(1, 2), "pi/2".into())]);
        assert_eq!(regular_points(&h), vec![rat(0), ratio(1, 2), ratio(9, 2), rat(5)]);
        let one = ElementaryFactor::new(rat(4), rat(0), rat(0)).unwrap().to_matrix_polynomial();
        let h1 = factorize(&one).unwrap();
        assert_eq!(h1.segments().len(), 1);
        assert_eq!(h1.segments()[0].theta.to_string(), "0");
    }

    #[test]
    fn equal_adjacent_types_are_rejected() {
        let m = ElementaryFactor::new(rat(1), rat(0), rat(0)).unwrap().to_matrix_polynomial();
        let n = ElementaryFactor::new(rat(2), rat(0), rat(0)).unwrap().to_matrix_polynomial();
        // Same type twice merges into one factor of degree one.
        let w = m.mul(&n);
        assert_eq!(w.degree(), 1);
        let h = factorize(&w).unwrap();
        assert_eq!(h.segments()[0].length, rat(3));
        let f = [
            ElementaryFactor::new(rat(1), rat(0), rat(0)).unwrap(),
            ElementaryFactor::new(rat(2), rat(0), rat(0)).unwrap(),
        ];
        assert_eq!(f[1].coupling(&f[0]), rat(0));
    }

    #[test]
    fn non_canonical_input_fails() {
        let w = MatrixPolynomial::new(Polynomial::one(), Polynomial::from_ints(&[0, 0, 1]), Polynomial::zero(), Polynomial::one());
        assert!(factorize(&w).is_err());
    }
}
