//! System definitions: the versioned JSON document and the builtin
//! registry with `*` (product) and `^m` (power) combinators.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::finite::FiniteMap;
use super::model::{InvariantSubset, SystemModel};
use super::piecewise::{Branch, PiecewiseLinearMap};
use super::shift::ShiftSft;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SystemDoc {
    FiniteMap {
        table: Vec<usize>,
        distances: Vec<Vec<f64>>,
    },
    ShiftSft {
        transitions: Vec<Vec<u8>>,
    },
    PiecewiseLinear {
        branches: Vec<Branch>,
        #[serde(default)]
        circle: bool,
    },
    Product {
        first: Box<SystemDoc>,
        second: Box<SystemDoc>,
    },
    Power {
        base: Box<SystemDoc>,
        exponent: usize,
    },
    Restriction {
        base: Box<SystemDoc>,
        subset: InvariantSubset,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Document {
    schema: u32,
    #[serde(flatten)]
    system: SystemDoc,
}

impl SystemDoc {
    pub fn build(&self) -> Result<SystemModel> {
        Ok(match self {
            SystemDoc::FiniteMap { table, distances } => {
                SystemModel::Finite(FiniteMap::new(table.clone(), distances.clone())?)
            }
            SystemDoc::ShiftSft { transitions } => {
                SystemModel::Shift(ShiftSft::new(transitions.clone())?)
            }
            SystemDoc::PiecewiseLinear { branches, circle } => {
                SystemModel::Piecewise(PiecewiseLinearMap::new(branches.clone(), *circle)?)
            }
            SystemDoc::Product { first, second } => {
                SystemModel::product(first.build()?, second.build()?)
            }
            SystemDoc::Power { base, exponent } => SystemModel::power(base.build()?, *exponent)?,
            SystemDoc::Restriction { base, subset } => {
                SystemModel::restrict(base.build()?, subset.clone())?
            }
        })
    }

    pub fn from_model(model: &SystemModel) -> SystemDoc {
        match model {
            SystemModel::Finite(f) => SystemDoc::FiniteMap {
                table: f.table().to_vec(),
                distances: f.distances().to_vec(),
            },
            SystemModel::Shift(s) => SystemDoc::ShiftSft {
                transitions: s.transitions().to_vec(),
            },
            SystemModel::Piecewise(p) => SystemDoc::PiecewiseLinear {
                branches: p.branches().to_vec(),
                circle: p.is_circle(),
            },
            SystemModel::Product(a, b) => SystemDoc::Product {
                first: Box::new(SystemDoc::from_model(a)),
                second: Box::new(SystemDoc::from_model(b)),
            },
            SystemModel::Power { base, exponent } => SystemDoc::Power {
                base: Box::new(SystemDoc::from_model(base)),
                exponent: *exponent,
            },
            SystemModel::Restriction { base, subset } => SystemDoc::Restriction {
                base: Box::new(SystemDoc::from_model(base)),
                subset: subset.descriptor(),
            },
        }
    }
}

/// Parses a `{"schema": 1, "variant": ...}` document.
pub fn from_json(text: &str) -> Result<SystemModel> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::config(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    doc.system.build()
}

pub fn to_json(model: &SystemModel) -> String {
    let doc = Document {
        schema: SCHEMA_VERSION,
        system: SystemDoc::from_model(model),
    };
    serde_json::to_string_pretty(&doc).expect("system documents always serialize")
}

pub fn load(path: &Path) -> Result<SystemModel> {
    from_json(&std::fs::read_to_string(path)?)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "identity8",
    "rotation-finite",
    "contraction-half",
    "shift:m",
    "golden-mean",
    "doubling",
    "tent",
];

fn builtin_atom(name: &str) -> Result<SystemModel> {
    let name = name.trim();
    let name = name.strip_prefix("builtin:").unwrap_or(name);
    Ok(match name {
        "identity8" => SystemModel::Finite(FiniteMap::identity(8)),
        "rotation-finite" => SystemModel::Finite(FiniteMap::rotation(8)),
        "contraction-half" => SystemModel::Piecewise(PiecewiseLinearMap::contraction_half()),
        "golden-mean" => SystemModel::golden_mean(),
        "doubling" => SystemModel::Piecewise(PiecewiseLinearMap::doubling()),
        "tent" => SystemModel::Piecewise(PiecewiseLinearMap::tent()),
        "point" => SystemModel::Finite(FiniteMap::identity(1)),
        other => {
            if let Some(m) = other.strip_prefix("shift:") {
                let m: usize = m
                    .parse()
                    .map_err(|_| Error::config(format!("bad alphabet size in '{other}'")))?;
                if !(1..=16).contains(&m) {
                    return Err(Error::config("shift alphabet size must be in 1..=16"));
                }
                SystemModel::full_shift(m)?
            } else {
                return Err(Error::config(format!(
                    "unknown system '{other}'; builtins are {}",
                    BUILTIN_NAMES.join(", ")
                )));
            }
        }
    })
}

/// Resolves a system expression: a JSON path, or builtin atoms joined by
/// `*` (product, left-associative) with an optional `^m` power suffix on
/// each factor, e.g. `shift:2*shift:2` or `doubling^2`.
pub fn resolve(expr: &str) -> Result<SystemModel> {
    let expr = expr.trim();
    if expr.ends_with(".json") || Path::new(expr).is_file() {
        return load(Path::new(expr));
    }
    let mut factors = expr.split('*').map(resolve_factor);
    let first = factors
        .next()
        .ok_or_else(|| Error::config("empty system expression"))??;
    factors.try_fold(first, |acc, f| Ok(SystemModel::product(acc, f?)))
}

fn resolve_factor(text: &str) -> Result<SystemModel> {
    match text.rsplit_once('^') {
        Some((base, m)) => {
            let m: usize = m
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad power exponent in '{text}'")))?;
            SystemModel::power(builtin_atom(base)?, m).map_err(|e| Error::config(e.to_string()))
        }
        None => builtin_atom(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_for_builtins() {
        for name in [
            "identity8",
            "golden-mean",
            "doubling",
            "shift:3*tent",
            "shift:2^2",
        ] {
            let m = resolve(name).unwrap();
            let back = from_json(&to_json(&m)).unwrap();
            assert_eq!(back, m, "{name}");
        }
    }

    #[test]
    fn schema_version_enforced() {
        let text = r#"{"schema": 2, "variant": "shift_sft", "transitions": [[1]]}"#;
        assert!(matches!(from_json(text), Err(Error::Config(_))));
    }

    #[test]
    fn parse_errors_carry_line_info() {
        let text = "{\n \"schema\": 1,\n \"variant\": \"shift_sft\",\n \"transitions\": [[1,1],\n";
        match from_json(text) {
            Err(Error::Parse { line, .. }) => assert!(line >= 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn restriction_document() {
        let text = r#"{"schema": 1, "variant": "restriction",
            "base": {"variant": "finite_map", "table": [1, 0, 2],
                     "distances": [[0,1,1],[1,0,1],[1,1,0]]},
            "subset": {"kind": "points", "indices": [2]}}"#;
        let m = from_json(text).unwrap();
        assert_eq!(m.variant_name(), "restriction");
        let bad = text.replace("[2]", "[0]");
        assert!(from_json(&bad).is_err());
    }

    #[test]
    fn unknown_builtin_lists_alternatives() {
        let err = resolve("lorenz").unwrap_err().to_string();
        assert!(err.contains("golden-mean"));
    }
}
