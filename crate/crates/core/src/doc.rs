//! JSON documents read and written by the command-line tool. Big integers are
//! emitted as plain decimal JSON numbers of any length.

use crate::bounds::{BoundResult, BoundValue, CoefficientBound, Formula};
use crate::lattice::{IndexedFamily, LatticeError, LatticeSet, NumericalPolynomial};
use crate::mu::{ConcatenatedMu, MuSequence};
use crate::verify::SuiteReport;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("family declares n = {declared} but lists {found} sets")]
    FamilySize { declared: usize, found: usize },
    #[error("family is empty; the ambient dimension is unknown")]
    EmptyFamily,
}

/// Serde adapters writing big integers as JSON numbers.
pub mod big {
    use num_bigint::{BigInt, BigUint};
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::Number;
    use std::str::FromStr;

    pub trait Decimal: Sized {
        fn to_decimal(&self) -> String;
        fn from_decimal(s: &str) -> Option<Self>;
    }

    impl Decimal for BigInt {
        fn to_decimal(&self) -> String {
            self.to_string()
        }
        fn from_decimal(s: &str) -> Option<Self> {
            BigInt::from_str(s).ok()
        }
    }

    impl Decimal for BigUint {
        fn to_decimal(&self) -> String {
            self.to_string()
        }
        fn from_decimal(s: &str) -> Option<Self> {
            BigUint::from_str(s).ok()
        }
    }

    fn number<E: serde::ser::Error>(s: &str) -> Result<Number, E> {
        Number::from_str(s).map_err(E::custom)
    }

    pub fn serialize<T: Decimal, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&number::<S::Error>(&v.to_decimal())?, s)
    }

    pub fn deserialize<'de, T: Decimal, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let n = Number::deserialize(d)?;
        T::from_decimal(&n.to_string()).ok_or_else(|| D::Error::custom(format!("not an integer: {n}")))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<T: Decimal, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let nums = v
                .iter()
                .map(|x| Number::from_str(&x.to_decimal()).map_err(S::Error::custom))
                .collect::<Result<Vec<_>, _>>()?;
            serde::Serialize::serialize(&nums, s)
        }

        pub fn deserialize<'de, T: Decimal, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
            Vec::<Number>::deserialize(d)?
                .into_iter()
                .map(|n| T::from_decimal(&n.to_string()).ok_or_else(|| D::Error::custom(format!("not an integer: {n}"))))
                .collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<T: Decimal, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T: Decimal, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
            Option::<Number>::deserialize(d)?
                .map(|n| T::from_decimal(&n.to_string()).ok_or_else(|| D::Error::custom(format!("not an integer: {n}"))))
                .transpose()
        }
    }
}

use num_bigint::{BigInt, BigUint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSetDoc {
    pub m: usize,
    pub points: Vec<Vec<u64>>,
}

impl LatticeSetDoc {
    pub fn from_set(set: &LatticeSet) -> Self {
        LatticeSetDoc {
            m: set.m(),
            points: set.minimals().iter().map(|p| p.entries().to_vec()).collect(),
        }
    }

    pub fn to_set(&self) -> Result<LatticeSet, LatticeError> {
        LatticeSet::new(self.m, self.points.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedFamilyDoc {
    pub n: usize,
    pub sets: Vec<LatticeSetDoc>,
}

/// Ordered sequence: a lattice-set document with the element order kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuSequenceDoc {
    pub m: usize,
    pub r0: u64,
    pub ordered: bool,
    pub points: Vec<Vec<u64>>,
}

impl MuSequenceDoc {
    pub fn from_seq(seq: &MuSequence) -> Self {
        MuSequenceDoc {
            m: seq.m(),
            r0: seq.r0(),
            ordered: true,
            points: seq.elems().iter().map(|p| p.entries().to_vec()).collect(),
        }
    }
}

/// What `kolchin` accepts: a family (has `sets`) or a single set, optionally
/// an ordered sequence document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Set(LatticeSet),
    Family(IndexedFamily),
}

pub fn parse_input(text: &str) -> Result<Input, DocError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("sets").is_some() {
        let doc: IndexedFamilyDoc = serde_json::from_value(value)?;
        if doc.n != doc.sets.len() {
            return Err(DocError::FamilySize {
                declared: doc.n,
                found: doc.sets.len(),
            });
        }
        let m = doc.sets.first().ok_or(DocError::EmptyFamily)?.m;
        let sets = doc.sets.iter().map(LatticeSetDoc::to_set).collect::<Result<Vec<_>, _>>()?;
        Ok(Input::Family(IndexedFamily::new(m, sets)?))
    } else {
        let doc: LatticeSetDoc = serde_json::from_value(value)?;
        Ok(Input::Set(doc.to_set()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub m: usize,
    /// Standard coefficients `a_0, ..., a_d`.
    #[serde(with = "big::vec")]
    pub coefficients: Vec<BigInt>,
    /// `-1` for the zero polynomial.
    pub degree: i64,
    pub differential_type: Option<usize>,
    #[serde(with = "big::opt")]
    pub typical_dimension: Option<BigInt>,
    pub expansion: String,
}

impl PolynomialDoc {
    pub fn new(m: usize, p: &NumericalPolynomial) -> Self {
        PolynomialDoc {
            m,
            coefficients: p.coeffs().to_vec(),
            degree: p.degree_signed(),
            differential_type: p.degree(),
            typical_dimension: p.leading().cloned(),
            expansion: p.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonDoc {
    #[serde(with = "big")]
    pub c: BigUint,
    #[serde(with = "big")]
    pub d: BigUint,
    /// `n D^j` for `j = 0..=m`.
    #[serde(with = "big::vec")]
    pub coefficient_sums: Vec<BigUint>,
    #[serde(with = "big")]
    pub type_zero_alternative: BigUint,
}

impl ComparisonDoc {
    pub fn new(cb: &CoefficientBound, alt: BigUint) -> Self {
        ComparisonDoc {
            c: cb.c.clone(),
            d: cb.d.clone(),
            coefficient_sums: cb.sums.clone(),
            type_zero_alternative: alt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub r: u64,
    pub m: u64,
    pub n: u64,
    pub tau: u64,
    pub formula: Formula,
    pub symbolic: String,
    #[serde(with = "big::opt")]
    pub value: Option<BigUint>,
    pub exceeds_cap: Option<String>,
    pub comparison: Option<ComparisonDoc>,
    /// Why the comparison is missing when it was requested.
    pub comparison_error: Option<String>,
}

impl BoundDoc {
    pub fn new(res: &BoundResult) -> Self {
        let (value, exceeds_cap) = match &res.value {
            BoundValue::Exact(v) => (Some(v.clone()), None),
            BoundValue::ExceedsCap { expression } => (None, Some(expression.clone())),
        };
        BoundDoc {
            r: res.params.r,
            m: res.params.m,
            n: res.params.n,
            tau: res.params.tau,
            formula: res.formula,
            symbolic: res.formula.symbolic().to_string(),
            value,
            exceeds_cap,
            comparison: None,
            comparison_error: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MFrakDoc {
    pub tau: usize,
    pub value: Option<u64>,
    pub index: Option<u64>,
    pub exceeds_cap: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuBlockDoc {
    pub variable: usize,
    pub sequence: MuSequenceDoc,
    #[serde(with = "big")]
    pub volume: BigUint,
    /// Closed-form prefix polynomials, one per prefix length.
    pub prefix_polynomials: Vec<String>,
    /// Kolchin polynomials of the prefixes computed directly; these are the
    /// true values where the closed form differs in lower-order terms.
    pub prefix_exact: Vec<String>,
}

impl MuBlockDoc {
    pub fn new(variable: usize, seq: &MuSequence) -> Self {
        MuBlockDoc {
            variable,
            sequence: MuSequenceDoc::from_seq(seq),
            volume: crate::mu::vol_mu(seq),
            prefix_polynomials: (1..=seq.len())
                .map(|l| crate::mu::omega_mu_prefix(seq, l).expect("in range").to_string())
                .collect(),
            prefix_exact: {
                let mut solver = crate::lattice::KolchinSolver::new();
                (1..=seq.len()).map(|l| solver.solve(&seq.prefix_set(l)).to_string()).collect()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuDoc {
    pub r: u64,
    pub m: usize,
    pub n: usize,
    pub blocks: Vec<MuBlockDoc>,
    #[serde(with = "big")]
    pub total_volume: BigUint,
    pub m_frak: Vec<MFrakDoc>,
}

impl MuDoc {
    pub fn new(concat: &ConcatenatedMu, m_frak: Vec<MFrakDoc>) -> Self {
        MuDoc {
            r: concat.r,
            m: concat.m,
            n: concat.n,
            blocks: concat.blocks.iter().map(|b| MuBlockDoc::new(b.variable, &b.seq)).collect(),
            total_volume: concat.total_volume(),
            m_frak,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacaulayDoc {
    #[serde(with = "big")]
    pub a: BigUint,
    pub d: u64,
    /// `(k_i, i)` pairs from `i = d` down.
    pub representation: Vec<(u64, u64)>,
    #[serde(with = "big")]
    pub bracket: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AckermannDoc {
    pub x: u64,
    #[serde(with = "big")]
    pub y: BigUint,
    #[serde(with = "big::opt")]
    pub value: Option<BigUint>,
    pub exceeds_cap: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub seed: u64,
    pub samples: u64,
    pub reports: Vec<SuiteReport>,
    pub passed: bool,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}
