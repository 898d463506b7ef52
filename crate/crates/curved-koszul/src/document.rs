//! The JSON presentation-document format accepted by the CLI.
//!
//! A document is one JSON object with a name, a mode (associative or
//! commutative), generator symbols with degrees, and relations whose parts
//! are rationals encoded as "p/q" strings. Quadratic coefficients are keyed
//! by "sym1,sym2"; in commutative mode the pair is unordered.

use crate::commutative::{sym2_pairs, CommRelation, CommutativePresentation};
use crate::qlc::{QlcPresentation, Relation};
use crate::rational::Rat;
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("json parse error: {0}")]
    Json(String),
    #[error("duplicate generator symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("generator {symbol:?} has negative degree {degree}")]
    NegativeDegree { symbol: String, degree: i64 },
    #[error("relation {index}: unknown symbol {symbol:?} in the {part} part")]
    UnknownSymbol { index: usize, symbol: String, part: &'static str },
    #[error("relation {index}: bad rational {value:?}: {err}")]
    BadRational { index: usize, value: String, err: String },
    #[error("relation {index}: quadratic key {key:?} is not \"a,b\"")]
    BadQuadraticKey { index: usize, key: String },
    #[error("unknown mode {0:?} (expected \"associative\" or \"commutative\")")]
    UnknownMode(String),
    #[error("command requires a commutative document, got mode=associative")]
    NotCommutative,
}

#[derive(Debug, Clone, Deserialize)]
struct RawDocument {
    name: String,
    #[serde(default = "default_mode")]
    mode: String,
    generators: Vec<RawGenerator>,
    #[serde(default)]
    relations: Vec<RawRelation>,
}

fn default_mode() -> String {
    "associative".into()
}

#[derive(Debug, Clone, Deserialize)]
struct RawGenerator {
    symbol: String,
    #[serde(default)]
    degree: i64,
}

#[derive(Debug, Clone, Deserialize, Default)]
struct RawRelation {
    #[serde(default)]
    constant: Option<String>,
    #[serde(default)]
    linear: BTreeMap<String, String>,
    #[serde(default)]
    quadratic: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Associative,
    Commutative,
}

/// A parsed presentation document in either mode.
#[derive(Debug, Clone)]
pub enum Document {
    Associative(QlcPresentation),
    Commutative(CommutativePresentation),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Associative(p) => &p.name,
            Document::Commutative(p) => &p.name,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Document::Associative(_) => Mode::Associative,
            Document::Commutative(_) => Mode::Commutative,
        }
    }

    /// The associative presentation: either the document itself or the
    /// canonical lift of a commutative one.
    pub fn associative(&self) -> QlcPresentation {
        match self {
            Document::Associative(p) => p.clone(),
            Document::Commutative(p) => p.to_associative(),
        }
    }

    pub fn commutative(&self) -> Result<CommutativePresentation, DocumentError> {
        match self {
            Document::Associative(_) => Err(DocumentError::NotCommutative),
            Document::Commutative(p) => Ok(p.clone()),
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
    let mut symbols = BTreeMap::new();
    for (i, g) in raw.generators.iter().enumerate() {
        if g.degree < 0 {
            return Err(DocumentError::NegativeDegree { symbol: g.symbol.clone(), degree: g.degree });
        }
        if symbols.insert(g.symbol.clone(), i).is_some() {
            return Err(DocumentError::DuplicateSymbol(g.symbol.clone()));
        }
    }
    let d = raw.generators.len();
    let parse_rat = |index: usize, v: &str| -> Result<Rat, DocumentError> {
        Rat::parse(v).map_err(|err| DocumentError::BadRational { index, value: v.into(), err })
    };
    let lookup = |index: usize, s: &str, part: &'static str| -> Result<usize, DocumentError> {
        symbols
            .get(s)
            .copied()
            .ok_or_else(|| DocumentError::UnknownSymbol { index, symbol: s.into(), part })
    };

    match raw.mode.as_str() {
        "associative" => {
            let mut relations = Vec::new();
            for (i, r) in raw.relations.iter().enumerate() {
                let constant = match &r.constant {
                    Some(v) => parse_rat(i, v)?,
                    None => Rat::zero(),
                };
                let mut linear = vec![Rat::zero(); d];
                for (sym, v) in &r.linear {
                    linear[lookup(i, sym, "linear")?] = parse_rat(i, v)?;
                }
                let mut quadratic = vec![Rat::zero(); d * d];
                for (key, v) in &r.quadratic {
                    let (a, b) = key
                        .split_once(',')
                        .ok_or_else(|| DocumentError::BadQuadraticKey { index: i, key: key.clone() })?;
                    let ia = lookup(i, a.trim(), "quadratic")?;
                    let ib = lookup(i, b.trim(), "quadratic")?;
                    quadratic[ia * d + ib] = parse_rat(i, v)?;
                }
                relations.push(Relation { constant, linear, quadratic });
            }
            Ok(Document::Associative(QlcPresentation {
                name: raw.name,
                gens: raw.generators.iter().map(|g| (g.symbol.clone(), g.degree)).collect(),
                relations,
            }))
        }
        "commutative" => {
            let pairs = sym2_pairs(d);
            let pair_index: BTreeMap<(usize, usize), usize> =
                pairs.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
            let mut relations = Vec::new();
            for (i, r) in raw.relations.iter().enumerate() {
                let constant = match &r.constant {
                    Some(v) => parse_rat(i, v)?,
                    None => Rat::zero(),
                };
                let mut linear = vec![Rat::zero(); d];
                for (sym, v) in &r.linear {
                    linear[lookup(i, sym, "linear")?] = parse_rat(i, v)?;
                }
                let mut quadratic = vec![Rat::zero(); pairs.len()];
                for (key, v) in &r.quadratic {
                    let (a, b) = key
                        .split_once(',')
                        .ok_or_else(|| DocumentError::BadQuadraticKey { index: i, key: key.clone() })?;
                    let ia = lookup(i, a.trim(), "quadratic")?;
                    let ib = lookup(i, b.trim(), "quadratic")?;
                    let p = (ia.min(ib), ia.max(ib));
                    quadratic[pair_index[&p]] = parse_rat(i, v)?;
                }
                relations.push(CommRelation { constant, linear, quadratic });
            }
            Ok(Document::Commutative(CommutativePresentation {
                name: raw.name,
                gens: raw.generators.iter().map(|g| g.symbol.clone()).collect(),
                relations,
            }))
        }
        other => Err(DocumentError::UnknownMode(other.into())),
    }
}

/// Bundled fixtures as documents.
pub fn fixture_document(name: &str) -> Option<Document> {
    if let Some(p) = crate::fixtures::associative_by_name(name) {
        return Some(Document::Associative(p));
    }
    crate::fixtures::commutative_by_name(name).map(Document::Commutative)
}

pub fn fixture_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = crate::fixtures::ASSOCIATIVE_FIXTURES.to_vec();
    names.push("non-koszul");
    names.extend_from_slice(crate::fixtures::COMMUTATIVE_FIXTURES);
    names
}
