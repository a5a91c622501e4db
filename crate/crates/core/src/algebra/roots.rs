//! Polynomial roots (Aberth iteration with Newton polishing), the
//! Hermite–Biehler test, exact rational real roots and partial fractions.

use num_complex::Complex64;
use num_rational::BigRational;

use super::poly::{FloatPoly, Polynomial};
use super::ratfun::RationalFunction;
use super::scalar::{rationalize, ExactComplex, Scalar};
use crate::error::{Error, Result};

/// Default relative residual tolerance for polished roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// All complex roots with multiplicity.
///
/// Simultaneous Aberth iteration, then Newton polishing of each root. A root
/// is accepted when `|p(α)| < tol·max|coeff|`, or when it sits at the
/// rounding floor of Horner evaluation.
pub fn roots<S: Scalar>(p: &super::poly::Poly<S>, tol: f64) -> Result<Vec<Complex64>> {
    let f = p.to_float();
    let n = match f.degree() {
        None | Some(0) => return Err(Error::NoRoots),
        Some(n) => n,
    };
    let lead = *f.leading().expect("nonzero");
    let monic = f.scale(&(Complex64::new(1.0, 0.0) / lead));
    let df = monic.derivative();

    // Cauchy bound for initial radius.
    let radius = 1.0
        + monic.coeffs()[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, ang)
        })
        .collect();

    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let pk = monic.eval_c64(z[k]);
            let dk = df.eval_c64(z[k]);
            if pk.norm() == 0.0 {
                continue;
            }
            let ratio = pk / dk;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += Complex64::new(1.0, 0.0) / (z[k] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    for zk in z.iter_mut() {
        for _ in 0..8 {
            let pk = monic.eval_c64(*zk);
            let dk = df.eval_c64(*zk);
            if dk.norm() == 0.0 || pk.norm() == 0.0 {
                break;
            }
            let step = pk / dk;
            let cand = *zk - step;
            if monic.eval_c64(cand).norm() <= pk.norm() {
                *zk = cand;
            } else {
                break;
            }
        }
    }

    let scale = f.max_abs_coeff();
    for zk in &z {
        let resid = f.eval_c64(*zk).norm();
        let floor: f64 = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * zk.norm().powi(k as i32))
            .sum::<f64>()
            * 64.0
            * f64::EPSILON;
        if !(resid < tol * scale || resid <= floor) {
            return Err(Error::RootFinding(format!(
                "residual {resid:e} at {zk} exceeds tolerance"
            )));
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

/// True iff every root lies strictly below the real axis (`Im α < −tol`).
pub fn hb_test(e: &Polynomial, tol: f64) -> Result<bool> {
    let rs = roots(e, DEFAULT_ROOT_TOL)?;
    Ok(rs.iter().all(|r| r.im < -tol))
}

/// Real rational roots of a real polynomial, found by rationalizing the
/// numerical real roots and confirming each exactly. Roots that are real
/// but irrational are returned in the second list as floats.
pub fn real_roots_split(p: &Polynomial) -> Result<(Vec<BigRational>, Vec<f64>)> {
    let rs = roots(p, DEFAULT_ROOT_TOL)?;
    let scale = 1.0 + rs.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let mut exact = Vec::new();
    let mut approx = Vec::new();
    for r in rs {
        if r.im.abs() > 1e-7 * scale {
            continue;
        }
        let cand = [1_000u64, 1_000_000, 1_000_000_000]
            .iter()
            .filter_map(|&d| rationalize(r.re, d))
            .find(|q| p.eval(&ExactComplex::real(q.clone())).is_zero());
        match cand {
            Some(q) if !exact.contains(&q) => exact.push(q),
            Some(_) => {}
            None => approx.push(r.re),
        }
    }
    exact.sort();
    approx.sort_by(f64::total_cmp);
    Ok((exact, approx))
}

/// Partial-fraction decomposition with simple poles.
#[derive(Clone, Debug)]
pub struct PartialFractions {
    pub poles: Vec<Complex64>,
    pub residues: Vec<Complex64>,
    pub polynomial_part: Polynomial,
}

impl PartialFractions {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles
            .iter()
            .zip(&self.residues)
            .fold(self.polynomial_part.eval_c64(z), |acc, (p, r)| acc + r / (z - p))
    }
}

/// `r(z) = polynomial_part(z) + Σ residueₖ/(z − poleₖ)`.
pub fn partial_fractions(r: &RationalFunction, tol: f64) -> Result<PartialFractions> {
    let (q, rem) = r.num().div_rem(r.den());
    if r.den().degree().unwrap_or(0) == 0 {
        let inv = ExactComplex::one().over(&r.den().coeff(0));
        return Ok(PartialFractions {
            poles: vec![],
            residues: vec![],
            polynomial_part: r.num().scale(&inv),
        });
    }
    let poles = roots(r.den(), tol)?;
    let spread = 1.0 + poles.iter().map(|p| p.norm()).fold(0.0, f64::max);
    for i in 0..poles.len() {
        for j in i + 1..poles.len() {
            if (poles[i] - poles[j]).norm() < 1e-6 * spread {
                return Err(Error::UnsupportedMultiplicity);
            }
        }
    }
    let rem_f: FloatPoly = rem.to_float();
    let dden = r.den().derivative().to_float();
    let residues = poles
        .iter()
        .map(|&p| rem_f.eval_c64(p) / dden.eval_c64(p))
        .collect();
    Ok(PartialFractions { poles, residues, polynomial_part: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn e0() -> Polynomial {
        Polynomial::from_int_pairs(&[(0, -1), (-1, 0), (0, 2), (1, 0)])
    }

    #[test]
    fn e0_roots_match_published_digits() {
        let rs = roots(&e0(), 1e-12).unwrap();
        let expected = [
            Complex64::new(-0.744862, -0.122561),
            Complex64::new(0.0, -1.75488),
            Complex64::new(0.744862, -0.122561),
        ];
        for (r, e) in rs.iter().zip(expected) {
            assert!((r - e).norm() < 5e-6, "{r} vs {e}");
        }
    }

    #[test]
    fn simple_root_sets() {
        let rs = roots(&Polynomial::from_ints(&[1, 0, 1]), 1e-12).unwrap();
        assert!((rs[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((rs[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(matches!(roots(&Polynomial::one(), 1e-12), Err(Error::NoRoots)));
        assert!(matches!(roots(&Polynomial::zero(), 1e-12), Err(Error::NoRoots)));
    }

    #[test]
    fn hermite_biehler_classification() {
        assert!(hb_test(&e0(), 1e-12).unwrap());
        assert!(!hb_test(&Polynomial::from_int_pairs(&[(0, -1), (1, 0)]), 1e-12).unwrap());
        assert!(!hb_test(&Polynomial::x(), 1e-12).unwrap());
    }

    #[test]
    fn exact_real_roots_of_a0() {
        let (ex, ap) = real_roots_split(&Polynomial::from_ints(&[0, -1, 0, 1])).unwrap();
        assert_eq!(ex, vec![rat(-1), rat(0), rat(1)]);
        assert!(ap.is_empty());
        let (ex, ap) = real_roots_split(&Polynomial::from_ints(&[-2, 0, 1])).unwrap();
        assert!(ex.is_empty());
        assert_eq!(ap.len(), 2);
    }

    #[test]
    fn q0_partial_fractions() {
        let q0 = RationalFunction::new(
            Polynomial::from_ints(&[1, 0, -2]),
            Polynomial::from_ints(&[0, -1, 0, 1]),
        )
        .unwrap();
        let pf = partial_fractions(&q0, 1e-12).unwrap();
        let expect = [(-1.0, -0.5), (0.0, -1.0), (1.0, -0.5)];
        for ((p, r), (ep, er)) in pf.poles.iter().zip(&pf.residues).zip(expect) {
            assert!((p.re - ep).abs() < 1e-12 && (r.re - er).abs() < 1e-12);
        }
        assert!(pf.polynomial_part.is_zero());
    }

    #[test]
    fn residues_sum_to_degree_gap_coefficient() {
        let r = RationalFunction::new(Polynomial::from_ints(&[-1, 0, 1]), e0()).unwrap();
        let pf = partial_fractions(&r, 1e-12).unwrap();
        let s: Complex64 = pf.residues.iter().sum();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        let z = Complex64::new(0.3, 0.8);
        assert!((pf.eval(z) - r.eval_c64(z)).norm() < 1e-10);
    }

    #[test]
    fn repeated_poles_are_rejected() {
        let r = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 2, 1])).unwrap();
        assert!(matches!(partial_fractions(&r, 1e-12), Err(Error::UnsupportedMultiplicity)));
        let p = RationalFunction::from_poly(Polynomial::from_ints(&[1, 2]));
        let pf = partial_fractions(&p, 1e-12).unwrap();
        assert!(pf.poles.is_empty());
        assert_eq!(pf.polynomial_part, Polynomial::from_ints(&[1, 2]));
    }
}
