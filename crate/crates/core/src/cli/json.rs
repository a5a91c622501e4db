//! JSON file formats. Exact rationals are strings `"p/q"`, exact multiples of
//! π are `{"pi_multiple": "p/q"}` and everything else is a plain number.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Angle, ExactComplex, MatrixPolynomial, PiRational, Polynomial, RationalFunction, Real};
use crate::canonical::{Hamiltonian, Projector, Segment};
use crate::classical::{KreinString, StringMass};
use crate::error::{Error, Result};
use crate::screw::ScrewFunctionData;
use crate::spectra::{Atom, DiscreteMeasure, NevanlinnaData};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| bad(format!("not a rational: {s:?}")))
}

/// A coefficient: `"p/q"` when real, `{"re": "p/q", "im": "p/q"}` otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Real(String),
    Complex { re: String, im: String },
}

impl ComplexJson {
    pub fn from_exact(c: &ExactComplex) -> Self {
        if c.is_real() {
            ComplexJson::Real(format_rational(&c.re))
        } else {
            ComplexJson::Complex { re: format_rational(&c.re), im: format_rational(&c.im) }
        }
    }

    pub fn to_exact(&self) -> Result<ExactComplex> {
        match self {
            ComplexJson::Real(s) => Ok(ExactComplex::real(rational(s)?)),
            ComplexJson::Complex { re, im } => Ok(ExactComplex::new(rational(re)?, rational(im)?)),
        }
    }
}

/// Ascending coefficient list.
pub type PolynomialJson = Vec<ComplexJson>;

pub fn poly_to_json(p: &Polynomial) -> PolynomialJson {
    p.coeffs().iter().map(ComplexJson::from_exact).collect()
}

pub fn poly_from_json(p: &PolynomialJson) -> Result<Polynomial> {
    Ok(Polynomial::new(p.iter().map(ComplexJson::to_exact).collect::<Result<_>>()?))
}

/// `{"num": [...], "den": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalFunctionJson {
    pub num: PolynomialJson,
    pub den: PolynomialJson,
}

impl RationalFunctionJson {
    pub fn from_domain(q: &RationalFunction) -> Self {
        RationalFunctionJson { num: poly_to_json(q.num()), den: poly_to_json(q.den()) }
    }

    pub fn to_domain(&self) -> Result<RationalFunction> {
        RationalFunction::new(poly_from_json(&self.num)?, poly_from_json(&self.den)?)
    }
}

/// `W = [[A, B], [C, D]]` as four coefficient lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferJson {
    #[serde(rename = "A")]
    pub a: PolynomialJson,
    #[serde(rename = "B")]
    pub b: PolynomialJson,
    #[serde(rename = "C")]
    pub c: PolynomialJson,
    #[serde(rename = "D")]
    pub d: PolynomialJson,
}

impl TransferJson {
    pub fn from_domain(w: &MatrixPolynomial) -> Self {
        TransferJson { a: poly_to_json(w.a()), b: poly_to_json(w.b()), c: poly_to_json(w.c()), d: poly_to_json(w.d()) }
    }

    pub fn to_domain(&self) -> Result<MatrixPolynomial> {
        Ok(MatrixPolynomial::new(
            poly_from_json(&self.a)?,
            poly_from_json(&self.b)?,
            poly_from_json(&self.c)?,
            poly_from_json(&self.d)?,
        ))
    }
}

/// `"pi/2"`, `"3pi/4"`, `"0"`, `{"pi_multiple": "p/q"}` or `{"radians": x}`.
/// Exact angles are written in the first form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleJson {
    Text(String),
    PiMultiple { pi_multiple: String },
    Radians { radians: f64 },
}

impl AngleJson {
    pub fn from_domain(a: &Angle) -> Self {
        match a {
            Angle::PiMultiple(_) => AngleJson::Text(a.to_string()),
            Angle::Radians(x) => AngleJson::Radians { radians: *x },
        }
    }

    pub fn to_domain(&self) -> Result<Angle> {
        match self {
            AngleJson::Text(t) => Angle::parse(t).ok_or_else(|| bad(&format!("bad angle `{t}`"))),
            AngleJson::PiMultiple { pi_multiple } => Ok(Angle::PiMultiple(rational(pi_multiple)?)),
            AngleJson::Radians { radians } if radians.is_finite() => Ok(Angle::Radians(*radians)),
            AngleJson::Radians { .. } => Err(bad("angle must be finite")),
        }
    }
}

/// A real value: `"p/q"`, `{"pi_multiple": "p/q"}`, `{"coeff": "p/q", "pi_power": k}` or a number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RealJson {
    Rational(String),
    PiMultiple { pi_multiple: String },
    PiPower { coeff: String, pi_power: i32 },
    Float(f64),
}

impl RealJson {
    pub fn from_domain(r: &Real) -> Self {
        match r {
            Real::Exact(p) => match p.pi_power() {
                0 => RealJson::Rational(format_rational(p.coeff())),
                1 => RealJson::PiMultiple { pi_multiple: format_rational(p.coeff()) },
                k => RealJson::PiPower { coeff: format_rational(p.coeff()), pi_power: k },
            },
            Real::Float(x) => RealJson::Float(*x),
        }
    }

    pub fn to_domain(&self) -> Result<Real> {
        match self {
            RealJson::Rational(s) => Ok(Real::rational(rational(s)?)),
            RealJson::PiMultiple { pi_multiple } => Ok(Real::pi_multiple(rational(pi_multiple)?)),
            RealJson::PiPower { coeff, pi_power } => Ok(Real::Exact(PiRational::new(rational(coeff)?, *pi_power))),
            RealJson::Float(x) if x.is_finite() => Ok(Real::Float(*x)),
            RealJson::Float(_) => Err(bad("value must be finite")),
        }
    }
}

/// `{"point": real, "mass": real}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomJson {
    pub point: RealJson,
    pub mass: RealJson,
}

pub type MeasureJson = Vec<AtomJson>;

pub fn measure_to_json(m: &DiscreteMeasure) -> MeasureJson {
    m.atoms()
        .iter()
        .map(|a| AtomJson { point: RealJson::from_domain(&a.point), mass: RealJson::from_domain(&a.mass) })
        .collect()
}

pub fn measure_from_json(m: &MeasureJson) -> Result<DiscreteMeasure> {
    let atoms = m
        .iter()
        .map(|a| Ok(Atom { point: a.point.to_domain()?, mass: a.mass.to_domain()? }))
        .collect::<Result<Vec<_>>>()?;
    DiscreteMeasure::new(atoms)
}

/// `g(t) = g(0) + ict + ∫ … dτ` as `{"g0", "c", "tau"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScrewJson {
    pub g0: RealJson,
    pub c: RealJson,
    pub tau: MeasureJson,
}

impl ScrewJson {
    pub fn from_domain(g: &ScrewFunctionData) -> Self {
        ScrewJson { g0: RealJson::from_domain(&g.g0), c: RealJson::from_domain(&g.c), tau: measure_to_json(&g.tau) }
    }

    pub fn to_domain(&self) -> Result<ScrewFunctionData> {
        Ok(ScrewFunctionData::new(self.g0.to_domain()?, self.c.to_domain()?, measure_from_json(&self.tau)?))
    }
}

/// Herglotz data `{"a", "b", "measure"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NevanlinnaJson {
    pub a: RealJson,
    pub b: RealJson,
    pub measure: MeasureJson,
}

impl NevanlinnaJson {
    pub fn from_domain(d: &NevanlinnaData) -> Self {
        NevanlinnaJson { a: RealJson::from_domain(&d.a), b: RealJson::from_domain(&d.b), measure: measure_to_json(&d.measure) }
    }

    pub fn to_domain(&self) -> Result<NevanlinnaData> {
        NevanlinnaData::new(self.a.to_domain()?, self.b.to_domain()?, measure_from_json(&self.measure)?)
    }
}

/// One indivisible interval. `matrix`, when present, must equal the projector of `theta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentJson {
    pub length: String,
    pub theta: AngleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[RealJson; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianJson {
    pub segments: Vec<SegmentJson>,
}

fn projector_json(p: &Projector) -> [[RealJson; 2]; 2] {
    match p.as_exact() {
        Some(m) => m.clone().map(|row| row.map(|q| RealJson::Rational(format_rational(&q)))),
        None => p.to_f64().map(|row| row.map(RealJson::Float)),
    }
}

impl HamiltonianJson {
    pub fn from_domain(h: &Hamiltonian) -> Self {
        let segments = h
            .segments()
            .iter()
            .map(|s| SegmentJson {
                length: format_rational(&s.length),
                theta: AngleJson::from_domain(&s.theta),
                matrix: Some(projector_json(&s.projector)),
            })
            .collect();
        HamiltonianJson { segments }
    }

    pub fn to_domain(&self) -> Result<Hamiltonian> {
        let segments = self
            .segments
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let seg = Segment::new(rational(&s.length)?, s.theta.to_domain()?);
                if let Some(m) = &s.matrix {
                    let given = m
                        .iter()
                        .map(|row| row.iter().map(|x| x.to_domain().map(|r| r.to_f64())).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    let want = seg.projector.to_f64();
                    let close = (0..2).all(|i| (0..2).all(|j| (given[i][j] - want[i][j]).abs() < 1e-12));
                    if !close {
                        return Err(bad(format!("segment {}: matrix does not match theta", k + 1)));
                    }
                }
                Ok(seg)
            })
            .collect::<Result<Vec<_>>>()?;
        Hamiltonian::new(segments)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StringMassJson {
    pub position: String,
    pub mass: String,
}

/// `{"masses": [...], "length": "p/q" | null}`; a null length is `L = ∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StringJson {
    pub masses: Vec<StringMassJson>,
    pub length: Option<String>,
}

impl StringJson {
    pub fn from_domain(s: &KreinString) -> Self {
        StringJson {
            masses: s
                .masses()
                .iter()
                .map(|m| StringMassJson { position: format_rational(&m.position), mass: format_rational(&m.mass) })
                .collect(),
            length: s.length().map(format_rational),
        }
    }

    pub fn to_domain(&self) -> Result<KreinString> {
        let masses = self
            .masses
            .iter()
            .map(|m| Ok(StringMass { position: rational(&m.position)?, mass: rational(&m.mass)? }))
            .collect::<Result<Vec<_>>>()?;
        let length = self.length.as_deref().map(rational).transpose()?;
        KreinString::new(masses, length)
    }
}

/// Parses JSON text into a schema type, mapping syntax errors to [`Error::InvalidInput`].
pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("schema types serialize")
}
