use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{j_matrix, rmul, to_poly_matrix, ElementaryFactor, RatMat};
use crate::algebra::{rat_to_f64, Angle, ExactComplex, Mat2, MatrixPolynomial, Polynomial};
use crate::debranges::HermiteBiehlerFrame;
use crate::error::{Error, Result};

/// Direction projector `[cos θ; sin θ][cos θ, sin θ]` of a segment.
#[derive(Clone, Debug, PartialEq)]
pub enum Projector {
    Exact(RatMat),
    Float([[f64; 2]; 2]),
}

impl Projector {
    /// Exact when θ is a multiple of π/2.
    pub fn from_angle(theta: &Angle) -> Projector {
        match theta.exact_cos_sin() {
            Some((c, s)) => Projector::Exact([[&c * &c, &c * &s], [&c * &s, &s * &s]]),
            None => {
                let (c, s) = theta.cos_sin();
                Projector::Float([[c * c, c * s], [c * s, s * s]])
            }
        }
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        match self {
            Projector::Exact(m) => m.clone().map(|r| r.map(|x| rat_to_f64(&x))),
            Projector::Float(m) => *m,
        }
    }

    pub fn as_exact(&self) -> Option<&RatMat> {
        match self {
            Projector::Exact(m) => Some(m),
            Projector::Float(_) => None,
        }
    }

    fn same_direction(&self, o: &Projector) -> bool {
        match (self, o) {
            (Projector::Exact(a), Projector::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), o.to_f64());
                (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).abs() < 1e-12))
            }
        }
    }
}

/// One indivisible interval: `H(t) = projector` for `length` units of `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub length: BigRational,
    pub theta: Angle,
    pub projector: Projector,
}

impl Segment {
    pub fn new(length: BigRational, theta: Angle) -> Segment {
        let theta = theta.normalized();
        let projector = Projector::from_angle(&theta);
        Segment { length, theta, projector }
    }
}

/// Piecewise-constant Hamiltonian on `[0, L]`; adjacent segments differ in type.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    segments: Vec<Segment>,
}

fn factor_angle(m: &ElementaryFactor) -> Angle {
    if m.beta.is_zero() {
        if m.alpha.is_positive() {
            Angle::zero()
        } else {
            Angle::half_pi()
        }
    } else {
        let tr = rat_to_f64(&m.trace());
        let c = (rat_to_f64(&m.alpha) / tr).sqrt();
        let s = (rat_to_f64(&m.gamma) / tr).sqrt() * if m.beta.is_positive() { 1.0 } else { -1.0 };
        Angle::Radians(s.atan2(c)).normalized()
    }
}

impl Hamiltonian {
    /// Validates positive lengths, rank-one projectors of trace one and
    /// distinct adjacent types.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidHamiltonian("no segments".into()));
        }
        for (k, s) in segments.iter().enumerate() {
            if !s.length.is_positive() {
                return Err(Error::InvalidHamiltonian(format!("segment {} has non-positive length", k + 1)));
            }
            let ok = match &s.projector {
                Projector::Exact(m) => {
                    m[0][1] == m[1][0]
                        && !m[0][0].is_negative()
                        && !m[1][1].is_negative()
                        && &m[0][0] + &m[1][1] == BigRational::one()
                        && &m[0][0] * &m[1][1] == &m[0][1] * &m[0][1]
                }
                Projector::Float(m) => {
                    (m[0][1] - m[1][0]).abs() < 1e-12
                        && m[0][0] >= -1e-12
                        && m[1][1] >= -1e-12
                        && (m[0][0] + m[1][1] - 1.0).abs() < 1e-12
                        && (m[0][0] * m[1][1] - m[0][1] * m[0][1]).abs() < 1e-12
                }
            };
            if !ok {
                return Err(Error::InvalidHamiltonian(format!("segment {} is not a rank-one projector", k + 1)));
            }
            if k > 0 && s.projector.same_direction(&segments[k - 1].projector) {
                return Err(Error::EqualAdjacentTypes(k + 1));
            }
        }
        Ok(Hamiltonian { segments })
    }

    /// Segments of length `αₖ + γₖ` with projector `Mₖ/(αₖ + γₖ)`.
    pub fn from_factors(factors: &[ElementaryFactor]) -> Result<Self> {
        let segments = factors
            .iter()
            .map(|m| {
                let tr = m.trace();
                let p = m.matrix().map(|r| r.map(|x| x / &tr));
                Segment { length: tr, theta: factor_angle(m), projector: Projector::Exact(p) }
            })
            .collect();
        Hamiltonian::new(segments)
    }

    /// Segments from `(length, θ)` pairs.
    pub fn from_angles(parts: &[(BigRational, Angle)]) -> Result<Self> {
        Hamiltonian::new(parts.iter().map(|(l, t)| Segment::new(l.clone(), t.clone())).collect())
    }

    /// `H₀`: types π/2, 0, π/2 on `[0, 1/2)`, `[1/2, 9/2)`, `[9/2, 5]`.
    pub fn example_h0() -> Self {
        use crate::algebra::{rat, ratio};
        Hamiltonian::from_angles(&[(ratio(1, 2), Angle::half_pi()), (rat(4), Angle::zero()), (ratio(1, 2), Angle::half_pi())])
            .expect("valid Hamiltonian")
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `t₀ = 0 < t₁ < ⋯ < t_r = L`.
    pub fn breakpoints(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero()];
        for s in &self.segments {
            let last = out.last().expect("nonempty").clone();
            out.push(last + &s.length);
        }
        out
    }

    pub fn total_length(&self) -> BigRational {
        self.segments.iter().fold(BigRational::zero(), |acc, s| acc + &s.length)
    }

    /// `∫ tr H dt`, finite: both endpoints are in the limit-circle case.
    pub fn trace_integral(&self) -> BigRational {
        self.total_length()
    }

    /// Index of the segment containing `t` (right-continuous, closed at `L`).
    pub fn segment_index(&self, t: f64) -> Option<usize> {
        let bp: Vec<f64> = self.breakpoints().iter().map(rat_to_f64).collect();
        if t < 0.0 || t > *bp.last()? {
            return None;
        }
        Some((0..self.segments.len()).find(|&k| t < bp[k + 1]).unwrap_or(self.segments.len() - 1))
    }

    /// `H(t)` as floats.
    pub fn matrix_at(&self, t: f64) -> Option<[[f64; 2]; 2]> {
        self.segment_index(t).map(|k| self.segments[k].projector.to_f64())
    }
}

/// `W(t) = base + (t − start)·slope` on `[start, end]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentSolution {
    pub start: BigRational,
    pub end: BigRational,
    pub base: MatrixPolynomial,
    pub slope: MatrixPolynomial,
}

impl SegmentSolution {
    pub fn at(&self, t: &BigRational) -> MatrixPolynomial {
        let s = Polynomial::constant(ExactComplex::real(t - &self.start));
        self.base.add(&self.slope.scale_poly(&s))
    }
}

/// Exact fundamental solution on every segment:
/// `W(t) = W(t_{k−1})(I − z(t − t_{k−1})H_kJ)`.
pub fn segment_solutions(h: &Hamiltonian) -> Result<Vec<SegmentSolution>> {
    let mut out = Vec::with_capacity(h.segments.len());
    let mut base = MatrixPolynomial::identity();
    let mut start = BigRational::zero();
    for s in &h.segments {
        let p = s
            .projector
            .as_exact()
            .ok_or_else(|| Error::Unsupported("exact solution needs exact projectors".into()))?;
        let neg_pj = rmul(p, &j_matrix()).map(|r| r.map(|x| -x));
        let slope = base.mul(&to_poly_matrix(&neg_pj, 1));
        let end = &start + &s.length;
        let sol = SegmentSolution { start: start.clone(), end: end.clone(), base: base.clone(), slope };
        base = sol.at(&end);
        start = end;
        out.push(sol);
    }
    Ok(out)
}

/// Exact `W(t, z)` as a matrix polynomial in `z`.
pub fn fundamental_solution(h: &Hamiltonian, t: &BigRational) -> Result<MatrixPolynomial> {
    if t.is_negative() || *t > h.total_length() {
        return Err(Error::OutOfRange(format!("t = {t} outside [0, {}]", h.total_length())));
    }
    let sols = segment_solutions(h)?;
    let seg = sols.iter().find(|s| *t <= s.end).expect("t in range");
    Ok(seg.at(t))
}

/// Floating-point `W(t, z)`.
pub fn fundamental_solution_at(h: &Hamiltonian, t: f64, z: Complex64) -> Result<Mat2> {
    let total = rat_to_f64(&h.total_length());
    if !(0.0..=total).contains(&t) {
        return Err(Error::OutOfRange(format!("t = {t} outside [0, {total}]")));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut w: Mat2 = [[one, zero], [zero, one]];
    let mut start = 0.0;
    for s in &h.segments {
        let len = rat_to_f64(&s.length);
        let dt = (t - start).clamp(0.0, len);
        if dt > 0.0 {
            let p = s.projector.to_f64();
            // I − z·dt·P·J with P·J = [[p01, −p00], [p11, −p01]].
            let f = z * dt;
            let step = [[one - f * p[0][1], f * p[0][0]], [-f * p[1][1], one + f * p[0][1]]];
            w = crate::algebra::matpoly::mat_mul(&w, &step);
        }
        start += len;
        if t <= start {
            break;
        }
    }
    Ok(w)
}

/// Breakpoints of the Hamiltonian; these are the regular points.
pub fn regular_points(h: &Hamiltonian) -> Vec<BigRational> {
    h.breakpoints()
}

/// One de Branges subspace `H(E(t))`, `E(t, z) = C(t, z) − iD(t, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainLink {
    pub t: BigRational,
    pub e: Polynomial,
    pub frame: HermiteBiehlerFrame,
    pub dimension: usize,
}

/// Chain of subspaces at the regular points, dimensions `0, 1, …, r`. When a
/// frame is given its `E` must equal `E(L)`.
pub fn subspace_chain(h: &Hamiltonian, frame: Option<&HermiteBiehlerFrame>) -> Result<Vec<ChainLink>> {
    let mut out = Vec::new();
    for t in regular_points(h) {
        let w = fundamental_solution(h, &t)?;
        let e = w.c() - &w.d().scale(&ExactComplex::i());
        let f = HermiteBiehlerFrame::new(e.clone())?;
        out.push(ChainLink { t, dimension: f.degree(), e, frame: f });
    }
    if let (Some(fr), Some(last)) = (frame, out.last()) {
        if last.e != *fr.e() {
            return Err(Error::InvalidInput("Hamiltonian does not belong to the given frame".into()));
        }
    }
    Ok(out)
}
