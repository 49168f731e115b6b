//! Versioned JSON interchange format for resolution complexes.
//!
//! ```json
//! { "format": 1, "field": "q" | "fp:<p>",
//!   "curve": { "f": "<poly>", "d": 3 } | null,
//!   "modules": [[0], [2,2,2,2,2,2,2,2,2], ...],
//!   "differentials": [ { "rows": 1, "cols": 9, "entries": [["...", ...]] }, ... ] }
//! ```
//!
//! Entries are row-major polynomial text in the canonical grammar.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::build::BuildError;
use crate::complex::{
    ComplexError, GradedFreeModule, GradedMatrix, LiftData, Provenance, ResolutionComplex,
};
use crate::field::{Field, FieldError, PrimeField, Rationals};
use crate::lift::{lift_even, lift_odd, LiftError, Parity};
use crate::parse::{parse_poly, ParseError};
use crate::poly::Homogeneity;
use crate::ring::RingId;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    UnsupportedFormat(u32),
    #[error("unknown field descriptor '{0}'")]
    UnknownField(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("bad polynomial entry: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc {
    format: u32,
    field: String,
    curve: Option<CurveDoc>,
    modules: Vec<Vec<u32>>,
    differentials: Vec<MatrixDoc>,
}

#[derive(Serialize, Deserialize)]
struct CurveDoc {
    f: String,
    d: u32,
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

/// A complex over either supported field, as decided by the JSON descriptor.
pub enum AnyComplex {
    Rational(ResolutionComplex<Rationals>),
    Prime(ResolutionComplex<PrimeField>),
}

/// Field descriptor as parsed from `q` / `fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDesc {
    Rational,
    Prime(u64),
}

impl FieldDesc {
    pub fn parse(text: &str) -> Result<FieldDesc, JsonError> {
        if text == "q" {
            return Ok(FieldDesc::Rational);
        }
        if let Some(p) = text.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| JsonError::UnknownField(text.to_string()))?;
            return Ok(FieldDesc::Prime(p));
        }
        Err(JsonError::UnknownField(text.to_string()))
    }
}

pub fn complex_to_json<K: Field>(c: &ResolutionComplex<K>) -> serde_json::Value {
    let curve = c.provenance.curve().map(|(f, d)| CurveDoc {
        f: f.to_string(),
        d,
    });
    let doc = ComplexDoc {
        format: FORMAT_VERSION,
        field: c.field().descriptor(),
        curve,
        modules: c.modules.iter().map(|m| m.twists().to_vec()).collect(),
        differentials: c
            .differentials
            .iter()
            .map(|d| MatrixDoc {
                rows: d.rows(),
                cols: d.cols(),
                entries: d
                    .entries()
                    .iter()
                    .map(|row| row.iter().map(|e| e.to_string()).collect())
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(&doc).expect("serializable document")
}

pub fn complex_to_json_string<K: Field>(c: &ResolutionComplex<K>) -> String {
    serde_json::to_string_pretty(&complex_to_json(c)).expect("serializable document")
}

fn load_typed<K: Field>(doc: &ComplexDoc, field: K) -> Result<ResolutionComplex<K>, JsonError> {
    if doc.modules.len() != doc.differentials.len() + 1 {
        return Err(JsonError::Inconsistent(format!(
            "{} modules do not frame {} differentials",
            doc.modules.len(),
            doc.differentials.len()
        )));
    }
    if doc.differentials.is_empty() {
        return Err(JsonError::Inconsistent("no differentials".to_string()));
    }
    let modules: Vec<GradedFreeModule> = doc
        .modules
        .iter()
        .map(|tw| GradedFreeModule::new(tw.clone()))
        .collect();
    let mut differentials = Vec::new();
    for (idx, m) in doc.differentials.iter().enumerate() {
        let position = idx + 1;
        if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
            return Err(JsonError::Inconsistent(format!(
                "differential {position} entry grid does not match its declared shape"
            )));
        }
        let mut entries = Vec::with_capacity(m.rows);
        for row in &m.entries {
            let parsed: Result<Vec<_>, ParseError> = row
                .iter()
                .map(|t| parse_poly(t, RingId::Ambient, field.clone()))
                .collect();
            entries.push(parsed?);
        }
        differentials.push(GradedMatrix::new(
            position,
            modules[position].clone(),
            modules[position - 1].clone(),
            entries,
        )?);
    }

    let provenance = match &doc.curve {
        None => Provenance::Veronese,
        Some(curve) => {
            let f = parse_poly(&curve.f, RingId::Curve, field.clone())?;
            match f.homogeneous_degree() {
                Homogeneity::Homogeneous(d) if d == curve.d && d >= 2 => {}
                _ => {
                    return Err(JsonError::Inconsistent(format!(
                        "curve polynomial is not homogeneous of the declared degree {}",
                        curve.d
                    )))
                }
            }
            let parity = Parity::of(curve.d);
            let lift = match parity {
                Parity::Even => LiftData::Even(lift_even(&f)?),
                Parity::Odd => LiftData::Odd(lift_odd(&f)?),
            };
            Provenance::Curve {
                f,
                degree: curve.d,
                parity,
                attested_irreducible: false,
                lift,
            }
        }
    };
    Ok(ResolutionComplex::new(modules, differentials, provenance))
}

pub fn load_complex(text: &str) -> Result<AnyComplex, JsonError> {
    let doc: ComplexDoc = serde_json::from_str(text)?;
    if doc.format != FORMAT_VERSION {
        return Err(JsonError::UnsupportedFormat(doc.format));
    }
    match FieldDesc::parse(&doc.field)? {
        FieldDesc::Rational => Ok(AnyComplex::Rational(load_typed(&doc, Rationals)?)),
        FieldDesc::Prime(p) => Ok(AnyComplex::Prime(load_typed(&doc, PrimeField::new(p)?)?)),
    }
}
