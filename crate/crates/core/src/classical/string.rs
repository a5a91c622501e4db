//! Krein strings with finitely many point masses.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{ExactComplex, Polynomial, RationalFunction, Scalar};
use crate::error::{Error, Result};

/// A point mass of a string.
#[derive(Clone, Debug, PartialEq)]
pub struct StringMass {
    pub position: BigRational,
    pub mass: BigRational,
}

/// `S[m, L]` with `m` a finite sum of point masses; `length = None` is `L = ∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct KreinString {
    masses: Vec<StringMass>,
    length: Option<BigRational>,
}

impl KreinString {
    /// Positions must be nonnegative, strictly increasing and below `L`.
    pub fn new(masses: Vec<StringMass>, length: Option<BigRational>) -> Result<Self> {
        for (k, m) in masses.iter().enumerate() {
            if m.position.is_negative() || !m.mass.is_positive() {
                return Err(Error::NotStringFunction(format!("invalid mass {} at {}", m.mass, m.position)));
            }
            if k > 0 && m.position <= masses[k - 1].position {
                return Err(Error::NotStringFunction("positions must increase".into()));
            }
            if length.as_ref().is_some_and(|l| m.position >= *l) {
                return Err(Error::NotStringFunction(format!("mass at {} beyond L", m.position)));
            }
        }
        if length.as_ref().is_some_and(|l| !l.is_positive()) {
            return Err(Error::NotStringFunction("L must be positive".into()));
        }
        Ok(KreinString { masses, length })
    }

    pub fn masses(&self) -> &[StringMass] {
        &self.masses
    }

    pub fn length(&self) -> Option<&BigRational> {
        self.length.as_ref()
    }
}

fn real(r: &BigRational) -> ExactComplex {
    ExactComplex::real(r.clone())
}

/// Value of `f` at `z → ∞`, provided `deg num ≤ deg den`.
fn at_infinity(f: &RationalFunction) -> Option<BigRational> {
    match f.degree_excess() {
        None => Some(BigRational::zero()),
        Some(d) if d < 0 => Some(BigRational::zero()),
        Some(0) => Some(f.num().leading()?.re.clone()),
        _ => None,
    }
}

/// Expands `q = ℓ₀ + 1/(−m₁z + 1/(ℓ₁ + 1/(−m₂z + ⋯)))` by limits at
/// infinity; mass `mⱼ` sits at `ℓ₀ + ⋯ + ℓ_{j−1}`.
pub fn stieltjes_string(q: &RationalFunction) -> Result<KreinString> {
    if !q.num().is_real() || !q.den().is_real() {
        return Err(Error::NotStringFunction("coefficients must be real".into()));
    }
    let bad = |what: &str| Error::NotStringFunction(what.to_string());
    let mut f = q.clone();
    let mut position = BigRational::zero();
    let mut masses = Vec::new();
    let z = RationalFunction::from_poly(Polynomial::x());
    loop {
        let l = at_infinity(&f).ok_or_else(|| bad("q grows at infinity"))?;
        if l.is_negative() || (!masses.is_empty() && !l.is_positive()) {
            return Err(bad("non-positive length"));
        }
        f = f.sub(&RationalFunction::constant(real(&l)));
        position += &l;
        if f.is_zero() {
            return KreinString::new(masses, Some(position));
        }
        let mut g = RationalFunction::constant(ExactComplex::one()).div(&f)?;
        if g.degree_excess() != Some(1) {
            return Err(bad("reciprocal is not linear at infinity"));
        }
        let lead = g.num().leading().expect("nonzero").re.clone() / &g.den().leading().expect("monic").re;
        let m = -lead;
        if !m.is_positive() {
            return Err(bad("non-positive mass"));
        }
        masses.push(StringMass { position: position.clone(), mass: m.clone() });
        g = g.add(&z.mul(&RationalFunction::constant(real(&m))));
        if g.is_zero() {
            return KreinString::new(masses, None);
        }
        f = RationalFunction::constant(ExactComplex::one()).div(&g)?;
    }
}

/// `φ`, `ψ` and their right derivatives at one `x`, as polynomials in `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct StringSolution {
    pub phi: Polynomial,
    pub dphi: Polynomial,
    pub psi: Polynomial,
    pub dpsi: Polynomial,
}

impl StringSolution {
    /// `(φ(x, λ), ψ(x, λ))`.
    pub fn at(&self, lambda: Complex64) -> (Complex64, Complex64) {
        (self.phi.eval_c64(lambda), self.psi.eval_c64(lambda))
    }

    /// `φψ' − φ'ψ`.
    pub fn wronskian(&self) -> Polynomial {
        &(&self.phi * &self.dpsi) - &(&self.dphi * &self.psi)
    }
}

/// Solves `dy' + λy dm = 0` with `φ(0) = ψ'(0) = 1`, `φ'(0) = ψ(0) = 0`.
/// A mass at `x` acts on the derivative returned at `x`.
pub fn string_solve(s: &KreinString, x: &BigRational) -> Result<StringSolution> {
    if x.is_negative() || s.length.as_ref().is_some_and(|l| x > l) {
        return Err(Error::OutOfRange(format!("x = {x} outside the string")));
    }
    let lambda = Polynomial::x();
    let mut y = [Polynomial::one(), Polynomial::zero()];
    let mut u = [Polynomial::zero(), Polynomial::one()];
    let mut pos = BigRational::zero();
    let advance = |v: &mut [Polynomial; 2], d: &BigRational| v[0] = &v[0] + &v[1].scale(&real(d));
    for m in s.masses.iter().take_while(|m| m.position <= *x) {
        let d = &m.position - &pos;
        advance(&mut y, &d);
        advance(&mut u, &d);
        let kick = lambda.scale(&real(&m.mass));
        y[1] = &y[1] - &(&kick * &y[0]);
        u[1] = &u[1] - &(&kick * &u[0]);
        pos = m.position.clone();
    }
    let d = x - &pos;
    advance(&mut y, &d);
    advance(&mut u, &d);
    let [phi, dphi] = y;
    let [psi, dpsi] = u;
    Ok(StringSolution { phi, dphi, psi, dpsi })
}

/// `q(λ) = lim_{x→L} ψ(x, λ)/φ(x, λ)`.
pub fn titchmarsh_weyl(s: &KreinString) -> Result<RationalFunction> {
    match &s.length {
        Some(l) => {
            let sol = string_solve(s, l)?;
            RationalFunction::new(sol.psi, sol.phi)
        }
        None => {
            let last = s.masses.last().map_or_else(BigRational::zero, |m| m.position.clone());
            let sol = string_solve(s, &last)?;
            if sol.dphi.is_zero() {
                return Err(Error::Degenerate("φ is constant beyond the last mass, so L = q(0−) is inconsistent".into()));
            }
            RationalFunction::new(sol.dpsi, sol.dphi)
        }
    }
}

/// `Q(√z)/√z` for odd `Q`.
pub fn q_substitute(q: &RationalFunction) -> Result<RationalFunction> {
    let pick = |p: &Polynomial, odd: bool| {
        Polynomial::new(p.coeffs().iter().skip(odd as usize).step_by(2).cloned().collect())
    };
    let (n, d) = (q.num(), q.den());
    if n.is_zero() {
        return Ok(RationalFunction::from_poly(Polynomial::zero()));
    }
    match (n.parity(), d.parity()) {
        // Q = N₁(w²)/(w·D₁(w²)) ⇒ N₁(z)/(z·D₁(z)).
        (Some(true), Some(false)) => RationalFunction::new(pick(n, false), pick(d, true).shift(1)),
        // Q = w·N₁(w²)/D₁(w²) ⇒ N₁(z)/D₁(z).
        (Some(false), Some(true)) => RationalFunction::new(pick(n, true), pick(d, false)),
        _ => Err(Error::SubstitutionNotRational),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::spectra::{example_q0, measure_from_q};

    fn q0_small() -> RationalFunction {
        // 1/(0 − z) + 1/(1 − z)
        RationalFunction::new(Polynomial::from_ints(&[1, -2]), Polynomial::from_ints(&[0, -1, 1])).unwrap()
    }

    fn s0() -> KreinString {
        KreinString::new(
            vec![
                StringMass { position: rat(0), mass: ratio(1, 2) },
                StringMass { position: rat(4), mass: ratio(1, 2) },
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn substitution_of_q0() {
        let q = q_substitute(&example_q0()).unwrap();
        assert_eq!(q, q0_small());
        let parts = RationalFunction::constant(ExactComplex::one())
            .div(&RationalFunction::from_poly(Polynomial::from_ints(&[0, -1])))
            .unwrap()
            .add(&RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, -1])).unwrap());
        assert_eq!(q, parts);
        assert_eq!(q_substitute(&RationalFunction::from_poly(Polynomial::x())).unwrap(), RationalFunction::from_poly(Polynomial::one()));
        let not_odd = RationalFunction::new(Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[0, 0, 1])).unwrap();
        assert!(matches!(q_substitute(&not_odd), Err(Error::SubstitutionNotRational)));
    }

    #[test]
    fn substitution_keeps_the_residue_bookkeeping() {
        // Q(w) = 2mw/(γ² − w²) has mass m at ±γ; q = 2m/(γ² − z) carries
        // the total 2m at γ².
        let g = rat(2);
        let m = ratio(3, 2);
        let q = RationalFunction::new(
            Polynomial::from_rationals(&[rat(0), &m * rat(2)]),
            Polynomial::from_rationals(&[&g * &g, rat(0), rat(-1)]),
        )
        .unwrap();
        let sub = q_substitute(&q).unwrap();
        let d = measure_from_q(&sub).unwrap();
        let atoms = d.measure.to_f64_pairs();
        assert_eq!(atoms.len(), 1);
        assert!((atoms[0].0 - 4.0).abs() < 1e-12 && (atoms[0].1 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn string_of_q0() {
        assert_eq!(stieltjes_string(&q0_small()).unwrap(), s0());
        assert_eq!(titchmarsh_weyl(&s0()).unwrap(), q0_small());
    }

    #[test]
    fn solutions_on_the_example_string() {
        let s = s0();
        let at4 = string_solve(&s, &rat(4)).unwrap();
        assert_eq!(at4.phi, Polynomial::from_ints(&[1, -2]));
        assert_eq!(at4.psi, Polynomial::from_ints(&[4]));
        assert_eq!(at4.dphi, Polynomial::from_ints(&[0, -1, 1]));
        assert_eq!(at4.dpsi, Polynomial::from_ints(&[1, -2]));
        let mid = string_solve(&s, &rat(3)).unwrap();
        assert_eq!(mid.phi, Polynomial::from_rationals(&[rat(1), ratio(-3, 2)]));
        assert_eq!(mid.psi, Polynomial::from_ints(&[3]));
        // φ = λ(λ−1)x − 4λ² + 2λ + 1 and ψ = (1 − 2λ)x + 8λ beyond x = 4.
        let far = string_solve(&s, &rat(7)).unwrap();
        assert_eq!(far.phi, Polynomial::from_ints(&[1, -5, 3]));
        assert_eq!(far.psi, Polynomial::from_ints(&[7, -6]));
        for x in [rat(0), ratio(1, 3), rat(4), rat(9)] {
            assert_eq!(string_solve(&s, &x).unwrap().wronskian(), Polynomial::one());
        }
        let zero = string_solve(&s, &rat(5)).unwrap().at(Complex64::new(0.0, 0.0));
        assert_eq!(zero, (Complex64::new(1.0, 0.0), Complex64::new(5.0, 0.0)));
    }

    #[test]
    fn elementary_strings() {
        let c = stieltjes_string(&RationalFunction::constant(ExactComplex::from_ints(3, 0))).unwrap();
        assert!(c.masses().is_empty());
        assert_eq!(c.length(), Some(&rat(3)));
        assert_eq!(titchmarsh_weyl(&c).unwrap(), RationalFunction::constant(ExactComplex::from_ints(3, 0)));
        // σ/(λ − z) with σ = 2, λ = 5: mass 1/σ at 0 and L = σ/λ.
        let q = RationalFunction::new(Polynomial::from_ints(&[2]), Polynomial::from_ints(&[5, -1])).unwrap();
        let s = stieltjes_string(&q).unwrap();
        assert_eq!(s.masses(), &[StringMass { position: rat(0), mass: ratio(1, 2) }]);
        assert_eq!(s.length(), Some(&ratio(2, 5)));
        assert_eq!(titchmarsh_weyl(&s).unwrap(), q);
        let empty = KreinString::new(vec![], None).unwrap();
        assert!(matches!(titchmarsh_weyl(&empty), Err(Error::Degenerate(_))));
    }

    #[test]
    fn non_string_functions_are_rejected() {
        let neg = RationalFunction::new(Polynomial::from_ints(&[-1]), Polynomial::from_ints(&[1, -1])).unwrap();
        assert!(stieltjes_string(&neg).is_err());
        assert!(stieltjes_string(&RationalFunction::from_poly(Polynomial::x())).is_err());
    }
}
