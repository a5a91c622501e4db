//! The space `L̂²(H)` of step vectors, the Weyl transform and its inverse,
//! and the model-space side of the correspondence.
//!
//! A step vector carries one pair of polynomials per Hamiltonian segment,
//! written in the local variable `s = t − t_{k−1}`. On a segment with
//! projector `P` the class is determined by `P·F`, which must be constant.
//! Components are exact (`ExactComplex`) or floating-point, and the whole
//! vector carries a real surd scale so values such as `√π` stay exact.

mod model;

pub use model::{
    aligned_test_function, diagram_check, e_times, l0_map, phat, phi_basis_gram, screw_line_s, DiagramReport,
    DiagramResidual, ModelSpace, ModelVector, PhiGram, DIAGRAM_LEGS, DIAGRAM_TOL,
};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{ExactComplex, FloatPoly, MatrixPolynomial, Number, PiRational, Poly, Polynomial, Scalar, Surd};
use crate::canonical::{segment_solutions, Hamiltonian, SegmentSolution};
use crate::debranges::{HermiteBiehlerFrame, ScaledPoly};
use crate::error::{Error, Result};

/// Element of `L̂²(H)`: `scale · (fₖ(s), gₖ(s))` on segment `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepVector<S: Scalar = ExactComplex> {
    pub scale: Surd,
    pub pieces: Vec<[Poly<S>; 2]>,
}

impl<S: Scalar> StepVector<S> {
    pub fn zero(h: &Hamiltonian) -> Self {
        StepVector { scale: Surd::one(), pieces: vec![[Poly::zero(), Poly::zero()]; h.segments().len()] }
    }

    /// The constant vector `v` on segment `k` (0-based), zero elsewhere.
    pub fn segment_constant(h: &Hamiltonian, k: usize, v: [S; 2]) -> Self {
        let mut out = StepVector::zero(h);
        let [a, b] = v;
        out.pieces[k] = [Poly::constant(a), Poly::constant(b)];
        out
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero() || self.pieces.iter().all(|[f, g]| f.is_zero() && g.is_zero())
    }

    /// Floating-point copy with the scale folded into the components.
    pub fn to_float(&self) -> StepVector<Complex64> {
        let c = Complex64::new(self.scale.to_f64(), 0.0);
        StepVector {
            scale: Surd::one(),
            pieces: self.pieces.iter().map(|[f, g]| [f.to_float().scale(&c), g.to_float().scale(&c)]).collect(),
        }
    }

    /// Value at `t ∈ [0, L]`.
    pub fn eval(&self, h: &Hamiltonian, t: f64) -> Option<[Complex64; 2]> {
        let k = h.segment_index(t)?;
        let start = crate::algebra::rat_to_f64(&h.breakpoints()[k]);
        let s = Complex64::new(t - start, 0.0);
        let c = self.scale.to_f64();
        let [f, g] = &self.pieces[k];
        Some([f.to_float().eval(&s) * c, g.to_float().eval(&s) * c])
    }
}

/// Which row of the fundamental solution the transform integrates against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RowPair {
    /// `(A(t, z), B(t, z))`, the first row.
    AB,
    /// `(C(t, z), D(t, z))`, the second row.
    #[default]
    CD,
}

impl RowPair {
    fn index(self) -> usize {
        match self {
            RowPair::AB => 0,
            RowPair::CD => 1,
        }
    }
}

fn projector<S: Scalar>(h: &Hamiltonian, k: usize) -> Result<[[S; 2]; 2]> {
    let p = h.segments()[k]
        .projector
        .as_exact()
        .ok_or_else(|| Error::Unsupported("step vectors need exact projectors".into()))?;
    Ok([[S::from_rational(&p[0][0]), S::from_rational(&p[0][1])], [S::from_rational(&p[1][0]), S::from_rational(&p[1][1])]])
}

fn apply<S: Scalar>(p: &[[S; 2]; 2], v: &[Poly<S>; 2]) -> [Poly<S>; 2] {
    let row = |i: usize| &v[0].scale(&p[i][0]) + &v[1].scale(&p[i][1]);
    [row(0), row(1)]
}

fn check_shape<S: Scalar>(h: &Hamiltonian, f: &StepVector<S>) -> Result<()> {
    if f.pieces.len() != h.segments().len() {
        return Err(Error::NotInLHat(format!("{} pieces for {} segments", f.pieces.len(), h.segments().len())));
    }
    Ok(())
}

/// Checks that `P·F` is constant on every segment.
pub fn check_constraints<S: Scalar>(h: &Hamiltonian, f: &StepVector<S>) -> Result<()> {
    check_shape(h, f)?;
    for (k, piece) in f.pieces.iter().enumerate() {
        let pf = apply(&projector::<S>(h, k)?, piece);
        let moving = |q: &Poly<S>| {
            q.derivative().coeffs().iter().any(|c| c.to_exact().map_or(c.to_c64().norm() > 1e-12, |e| !e.is_zero()))
        };
        if moving(&pf[0]) || moving(&pf[1]) {
            return Err(Error::NotInLHat(format!("constrained component varies on segment {}", k + 1)));
        }
    }
    Ok(())
}

/// `∫₀^len q(s) ds`.
fn integral<S: Scalar>(q: &Poly<S>, len: &BigRational) -> S {
    let mut total = S::zero();
    let mut power = len.clone();
    for (k, c) in q.coeffs().iter().enumerate() {
        total = total.plus(&c.times(&S::from_rational(&(&power / BigRational::from_integer((k as i64 + 1).into())))));
        power = &power * len;
    }
    total
}

fn to_number<S: Scalar>(value: S, scale: &Surd, pi_power: i32) -> Number {
    if value.is_zero() || scale.is_zero() {
        return Number::zero();
    }
    if let (Some(v), Some(s)) = (value.to_exact(), scale.as_pi_rational()) {
        return Number::exact(v, pi_power).scale(&s);
    }
    Number::Float(value.to_c64() * scale.to_f64() * std::f64::consts::PI.powi(pi_power))
}

/// `⟨F, G⟩ = (1/π) Σₖ ∫ Gₖ(s)* Pₖ Fₖ(s) ds`, linear in `F`.
pub fn l2h_inner<S: Scalar>(h: &Hamiltonian, f: &StepVector<S>, g: &StepVector<S>) -> Result<Number> {
    check_constraints(h, f)?;
    check_constraints(h, g)?;
    let mut total = S::zero();
    for (k, seg) in h.segments().iter().enumerate() {
        let pf = apply(&projector::<S>(h, k)?, &f.pieces[k]);
        let [g0, g1] = &g.pieces[k];
        let integrand = &(&pf[0] * &g0.sharp()) + &(&pf[1] * &g1.sharp());
        total = total.plus(&integral(&integrand, &seg.length));
    }
    Ok(to_number(total, &(&f.scale * &g.scale), -1))
}

/// `‖F‖²` in `L̂²(H)`.
pub fn l2h_norm_sq<S: Scalar>(h: &Hamiltonian, f: &StepVector<S>) -> Result<Number> {
    l2h_inner(h, f, f)
}

/// `‖F‖` in `L̂²(H)`.
pub fn l2h_norm<S: Scalar>(h: &Hamiltonian, f: &StepVector<S>) -> Result<f64> {
    Ok(l2h_norm_sq(h, f)?.to_c64().re.max(0.0).sqrt())
}

fn lift<S: Scalar>(p: &Polynomial) -> Poly<S> {
    Poly::new(p.coeffs().iter().map(S::from_exact).collect())
}

/// `(𝖶F)(z) = (1/π) Σₖ ∫ row(t, z)·Pₖ·Fₖ dt`, where `row` is the chosen row of
/// the fundamental solution `W(t, z)`.
pub fn weyl_transform<S: Scalar>(h: &Hamiltonian, f: &StepVector<S>, rows: RowPair) -> Result<ScaledPoly<S>> {
    check_constraints(h, f)?;
    let sols = segment_solutions(h)?;
    let i = rows.index();
    let mut out = Poly::<S>::zero();
    for (k, (seg, sol)) in h.segments().iter().zip(&sols).enumerate() {
        let pf = apply(&projector::<S>(h, k)?, &f.pieces[k]);
        for j in 0..2 {
            let base = lift::<S>(sol.base.get(i, j));
            let slope = lift::<S>(sol.slope.get(i, j));
            let flat = integral(&pf[j], &seg.length);
            let moment = integral(&pf[j].shift(1), &seg.length);
            out = &out + &(&base.scale(&flat) + &slope.scale(&moment));
        }
    }
    let inv_pi = Surd::from_pi_rational(&PiRational::new(BigRational::one(), -1));
    Ok(ScaledPoly { poly: out, scale: &f.scale * &inv_pi })
}

fn row_at_node(sol: &SegmentSolution, i: usize, g: &ExactComplex) -> [Polynomial; 2] {
    let m = |w: &MatrixPolynomial, j: usize| w.get(i, j).eval(g);
    [0, 1].map(|j| Polynomial::new(vec![m(&sol.base, j), m(&sol.slope, j)]))
}

/// `(𝖶⁻¹F)(t) = Σ_γ F(γ)·w_γ·row(t, γ)ᵀ` over the norm nodes of the frame,
/// with `w_γ` the node weights. Exact for exact frames and polynomials.
pub fn inverse_weyl(
    h: &Hamiltonian,
    frame: &HermiteBiehlerFrame,
    f: &ScaledPoly,
    rows: RowPair,
) -> Result<StepVector> {
    check_degree(frame, f.poly.degree())?;
    let (points, weights) = frame
        .exact_nodes()
        .ok_or_else(|| Error::Unsupported("exact inverse transform needs rational nodes".into()))?;
    let sols = segment_solutions(h)?;
    let i = rows.index();
    let mut pieces = vec![[Polynomial::zero(), Polynomial::zero()]; sols.len()];
    for (g, w) in points.iter().zip(&weights) {
        let c = &f.poly.eval(g) * w;
        if c.is_zero() {
            continue;
        }
        for (piece, sol) in pieces.iter_mut().zip(&sols) {
            let [r0, r1] = row_at_node(sol, i, g);
            piece[0] = &piece[0] + &r0.scale(&c);
            piece[1] = &piece[1] + &r1.scale(&c);
        }
    }
    let pi = Surd::from_pi_rational(&PiRational::pi_multiple(BigRational::one()));
    Ok(StepVector { scale: &f.scale * &pi, pieces })
}

/// Floating-point [`inverse_weyl`] for arbitrary frames.
pub fn inverse_weyl_float(
    h: &Hamiltonian,
    frame: &HermiteBiehlerFrame,
    f: &FloatPoly,
    rows: RowPair,
) -> Result<StepVector<Complex64>> {
    check_degree(frame, crate::algebra::poly::float_degree(f))?;
    let values: Vec<(f64, Complex64)> =
        frame.weighted_nodes().into_iter().map(|(g, w)| (g, f.eval(&Complex64::new(g, 0.0)) * w)).collect();
    inverse_from_values(h, &values, rows)
}

/// `Σ_γ c_γ·row(t, γ)ᵀ` for node values `c_γ`.
pub(crate) fn inverse_from_values(
    h: &Hamiltonian,
    values: &[(f64, Complex64)],
    rows: RowPair,
) -> Result<StepVector<Complex64>> {
    let sols = segment_solutions(h)?;
    let i = rows.index();
    let mut pieces = vec![[FloatPoly::zero(), FloatPoly::zero()]; sols.len()];
    for &(g, c) in values {
        let z = Complex64::new(g, 0.0);
        for (piece, sol) in pieces.iter_mut().zip(&sols) {
            for (j, slot) in piece.iter_mut().enumerate() {
                let r = FloatPoly::new(vec![sol.base.get(i, j).eval_c64(z) * c, sol.slope.get(i, j).eval_c64(z) * c]);
                *slot = &*slot + &r;
            }
        }
    }
    Ok(StepVector { scale: Surd::one(), pieces })
}

fn check_degree(frame: &HermiteBiehlerFrame, d: Option<usize>) -> Result<()> {
    match d {
        Some(d) if d >= frame.degree() => Err(Error::NotInSpace { degree: d, bound: frame.degree() }),
        _ => Ok(()),
    }
}

/// The classes `c₁, c₂, …`: the range direction of each segment's projector,
/// scaled so its larger coordinate is 1, with the free component zero.
pub fn direction_vectors(h: &Hamiltonian) -> Result<Vec<StepVector>> {
    (0..h.segments().len())
        .map(|k| {
            let p = projector::<ExactComplex>(h, k)?;
            let j = if p[0][0].to_c64().re >= p[1][1].to_c64().re { 0 } else { 1 };
            let v = [p[0][j].over(&p[j][j]), p[1][j].over(&p[j][j])];
            Ok(StepVector::segment_constant(h, k, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::canonical::{factorize, transfer_matrix};
    use crate::debranges::{extension_eigenbasis, random_symmetric_hb};
    use crate::sampling;

    fn h0() -> Hamiltonian {
        Hamiltonian::example_h0()
    }

    fn surd(q: BigRational, k: i32) -> Surd {
        Surd::sqrt_of(PiRational::new(q, k))
    }

    fn c_vec(x: i64, y: i64) -> [ExactComplex; 2] {
        [ExactComplex::from_ints(x, 0), ExactComplex::from_ints(y, 0)]
    }

    #[test]
    fn images_of_the_unit_classes() {
        let h = h0();
        let f1 = StepVector::segment_constant(&h, 0, c_vec(0, 1));
        let f2 = StepVector::segment_constant(&h, 1, c_vec(1, 0));
        let f3 = StepVector::segment_constant(&h, 2, c_vec(0, 1));
        let w = |f: &StepVector| weyl_transform(&h, f, RowPair::CD).unwrap().as_pi_poly().unwrap();
        assert_eq!(w(&f1), (Polynomial::from_rationals(&[ratio(1, 2)]), -1));
        assert_eq!(w(&f2), (Polynomial::from_ints(&[0, -2]), -1));
        assert_eq!(w(&f3), (Polynomial::from_rationals(&[ratio(1, 2), rat(0), rat(-1)]), -1));
        assert_eq!(direction_vectors(&h).unwrap(), vec![f1, f2, f3]);
    }

    #[test]
    fn zero_vector_maps_to_zero() {
        let h = h0();
        let z = StepVector::<ExactComplex>::zero(&h);
        assert!(weyl_transform(&h, &z, RowPair::CD).unwrap().poly.is_zero());
        assert!(l2h_norm_sq(&h, &z).unwrap().is_zero());
    }

    fn eigenbasis() -> Vec<ScaledPoly> {
        let frame = HermiteBiehlerFrame::example_e0();
        let eb = extension_eigenbasis(&frame, &crate::algebra::Angle::half_pi()).unwrap();
        // Eigenvalues ascend: −1, 0, 1.
        eb.normalized.into_iter().map(|f| f.as_exact().unwrap().clone()).collect()
    }

    fn cd_at(h: &Hamiltonian, g: i64) -> Vec<[Polynomial; 2]> {
        let z = ExactComplex::from_ints(g, 0);
        segment_solutions(h).unwrap().iter().map(|s| row_at_node(s, 1, &z)).collect()
    }

    #[test]
    fn inverse_images_of_the_eigenbasis() {
        let h = h0();
        let frame = HermiteBiehlerFrame::example_e0();
        let basis = eigenbasis();
        let inv: Vec<StepVector> = basis.iter().map(|f| inverse_weyl(&h, &frame, f, RowPair::CD).unwrap()).collect();
        let neg = |v: Vec<[Polynomial; 2]>| v.into_iter().map(|[a, b]| [-a, -b]).collect::<Vec<_>>();
        assert_eq!(inv[1], StepVector { scale: surd(rat(1), 1), pieces: neg(cd_at(&h, 0)) });
        assert_eq!(inv[2], StepVector { scale: surd(ratio(1, 2), 1), pieces: cd_at(&h, 1) });
        assert_eq!(inv[0], StepVector { scale: surd(ratio(1, 2), 1), pieces: cd_at(&h, -1) });
        // [C(t, 0); D(t, 0)] = [0; 1] on the whole interval.
        assert!(cd_at(&h, 0).iter().all(|[c, d]| c.is_zero() && *d == Polynomial::one()));
    }

    #[test]
    fn inverse_images_are_orthonormal_and_invert_the_transform() {
        let h = h0();
        let frame = HermiteBiehlerFrame::example_e0();
        let basis = eigenbasis();
        let inv: Vec<StepVector> = basis.iter().map(|f| inverse_weyl(&h, &frame, f, RowPair::CD).unwrap()).collect();
        for (i, x) in inv.iter().enumerate() {
            check_constraints(&h, x).unwrap();
            for (j, y) in inv.iter().enumerate() {
                let v = l2h_inner(&h, x, y).unwrap();
                let expect = if i == j { Number::from_pi_rational(&PiRational::one()) } else { Number::zero() };
                assert_eq!(v, expect, "({i}, {j})");
            }
            let back = weyl_transform(&h, x, RowPair::CD).unwrap();
            assert_eq!(back.scale, basis[i].scale);
            assert_eq!(back.poly, basis[i].poly);
        }
        assert!(inverse_weyl(&h, &frame, &ScaledPoly::unscaled(Polynomial::zero()), RowPair::CD).unwrap().is_zero());
    }

    #[test]
    fn norms_of_the_inverse_images() {
        let h = h0();
        let f0 = StepVector { scale: surd(rat(1), 1), pieces: cd_at(&h, 0) };
        let f1 = StepVector { scale: surd(ratio(1, 2), 1), pieces: cd_at(&h, 1) };
        assert_eq!(l2h_norm(&h, &f0).unwrap(), 1.0);
        assert!((l2h_norm(&h, &f1).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constraint_violations_are_rejected() {
        let h = h0();
        let mut f = StepVector::<ExactComplex>::zero(&h);
        // Segment 2 has type 0: the first component must be constant.
        f.pieces[1][0] = Polynomial::x();
        assert!(matches!(l2h_norm_sq(&h, &f), Err(Error::NotInLHat(_))));
        // The free component may vary.
        let mut g = StepVector::<ExactComplex>::zero(&h);
        g.pieces[1][1] = Polynomial::x();
        assert!(l2h_norm_sq(&h, &g).unwrap().is_zero());
        let short = StepVector::<ExactComplex> { scale: Surd::one(), pieces: vec![] };
        assert!(check_constraints(&h, &short).is_err());
    }

    #[test]
    fn float_and_exact_transforms_agree() {
        let h = h0();
        let f = StepVector::segment_constant(&h, 1, c_vec(3, 7));
        let exact = weyl_transform(&h, &f, RowPair::AB).unwrap().to_float();
        let float = weyl_transform(&h, &f.to_float(), RowPair::AB).unwrap().to_float();
        assert!(crate::algebra::poly::float_poly_close(&exact, &float, 1e-14));
    }

    #[test]
    fn random_frames_round_trip() {
        let mut r = sampling::rng(11);
        for n in 1..=4 {
            let frame = HermiteBiehlerFrame::new(random_symmetric_hb(&mut r, n)).unwrap();
            let h = factorize(&transfer_matrix(&frame).unwrap()).unwrap();
            let basis = crate::debranges::gram_schmidt_basis(&frame).unwrap();
            let inv: Vec<StepVector<Complex64>> = basis
                .iter()
                .map(|f| inverse_weyl_float(&h, &frame, &f.to_float(), RowPair::CD).unwrap())
                .collect();
            for (i, x) in inv.iter().enumerate() {
                let back = weyl_transform(&h, x, RowPair::CD).unwrap().to_float();
                let target = basis[i].to_float();
                assert!(crate::algebra::poly::float_poly_close(&back, &target, 1e-8), "n = {n}, i = {i}");
                for (j, y) in inv.iter().enumerate() {
                    let v = l2h_inner(&h, x, y).unwrap().to_c64();
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((v - e).norm() < 1e-8, "n = {n}: ⟨{i}, {j}⟩ = {v}");
                }
            }
        }
    }

    #[test]
    fn evaluation_uses_local_coordinates() {
        let h = h0();
        let f = StepVector { scale: surd(rat(1), 1), pieces: cd_at(&h, 1) };
        let w = crate::canonical::fundamental_solution_at(&h, 3.0, Complex64::new(1.0, 0.0)).unwrap();
        let v = f.eval(&h, 3.0).unwrap();
        let c = std::f64::consts::PI.sqrt();
        assert!((v[0] - w[1][0] * c).norm() < 1e-12 && (v[1] - w[1][1] * c).norm() < 1e-12);
        assert!(f.eval(&h, 6.0).is_none());
    }
}
