//! Machine-readable reports with self-contained witness certificates.
//! A witness embeds the action matrices of both endpoints together with the
//! intertwining matrix and its inverse, so it re-verifies from the report
//! alone. Reports are deterministic for fixed inputs and seed, up to the
//! timing field.

use super::documents::{field_from_value, field_json, matrix_from_value, matrix_json};
use crate::error::FinlinError;
use crate::exact::{Field, Matrix};
use crate::modrep::{Bimodule, LeftModule, Morphism};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    fn worse(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// A self-contained isomorphism certificate: both endpoints' action
/// matrices, the witness matrix and its inverse.
#[derive(Debug, Clone)]
pub struct Witness {
    pub field: Field,
    pub source_left: Vec<Matrix>,
    pub source_right: Vec<Matrix>,
    pub target_left: Vec<Matrix>,
    pub target_right: Vec<Matrix>,
    pub matrix: Matrix,
    pub inverse: Option<Matrix>,
}

impl Witness {
    pub fn from_left_morphism(m: &Morphism<LeftModule>) -> Witness {
        Witness {
            field: m.matrix.field(),
            source_left: m.source.actions().to_vec(),
            source_right: vec![],
            target_left: m.target.actions().to_vec(),
            target_right: vec![],
            matrix: m.matrix.clone(),
            inverse: m.matrix.inverse(),
        }
    }

    pub fn from_bimodule_morphism(m: &Morphism<Bimodule>) -> Witness {
        Witness {
            field: m.matrix.field(),
            source_left: m.source.left_actions().to_vec(),
            source_right: m.source.right_actions().to_vec(),
            target_left: m.target.left_actions().to_vec(),
            target_right: m.target.right_actions().to_vec(),
            matrix: m.matrix.clone(),
            inverse: m.matrix.inverse(),
        }
    }

    /// Plain matrix payload (no certificate semantics).
    pub fn plain(m: &Matrix) -> Witness {
        Witness {
            field: m.field(),
            source_left: vec![],
            source_right: vec![],
            target_left: vec![],
            target_right: vec![],
            matrix: m.clone(),
            inverse: None,
        }
    }

    /// Re-verifies the certificate: the matrix intertwines every embedded
    /// action pair exactly, and the inverse (when present) is exact.
    pub fn reverify(&self) -> bool {
        let pairs = self
            .source_left
            .iter()
            .zip(&self.target_left)
            .chain(self.source_right.iter().zip(&self.target_right));
        for (s, t) in pairs {
            let lhs = match self.matrix.mul(s) {
                Ok(m) => m,
                Err(_) => return false,
            };
            let rhs = match t.mul(&self.matrix) {
                Ok(m) => m,
                Err(_) => return false,
            };
            if lhs != rhs {
                return false;
            }
        }
        if let Some(inv) = &self.inverse {
            match self.matrix.mul(inv) {
                Ok(p) if p.is_identity() => {}
                _ => return false,
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let acts = |ms: &[Matrix]| Value::Array(ms.iter().map(matrix_json).collect());
        json!({
            "field": field_json(&self.field),
            "source_left": acts(&self.source_left),
            "source_right": acts(&self.source_right),
            "target_left": acts(&self.target_left),
            "target_right": acts(&self.target_right),
            "matrix": matrix_json(&self.matrix),
            "inverse": self.inverse.as_ref().map(matrix_json).unwrap_or(Value::Null),
        })
    }

    pub fn from_json(v: &Value) -> Result<Witness, FinlinError> {
        let obj = v
            .as_object()
            .ok_or_else(|| FinlinError::Syntax("witness must be an object".into()))?;
        let field = field_from_value(
            obj.get("field").ok_or_else(|| FinlinError::Syntax("witness: missing field".into()))?,
        )?;
        let acts = |key: &str| -> Result<Vec<Matrix>, FinlinError> {
            obj.get(key)
                .and_then(Value::as_array)
                .map(|a| a.iter().map(|m| matrix_from_value(&field, m)).collect())
                .unwrap_or_else(|| Ok(vec![]))
        };
        let matrix = matrix_from_value(
            &field,
            obj.get("matrix").ok_or_else(|| FinlinError::Syntax("witness: missing matrix".into()))?,
        )?;
        let inverse = match obj.get("inverse") {
            Some(Value::Null) | None => None,
            Some(m) => Some(matrix_from_value(&field, m)?),
        };
        Ok(Witness {
            field,
            source_left: acts("source_left")?,
            source_right: acts("source_right")?,
            target_left: acts("target_left")?,
            target_right: acts("target_right")?,
            matrix,
            inverse,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub status: Verdict,
    pub detail: String,
    pub witness: Option<Witness>,
    pub counterexample: Option<String>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            status: Verdict::Pass,
            detail: detail.into(),
            witness: None,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, counterexample: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            status: Verdict::Fail,
            detail: String::new(),
            witness: None,
            counterexample: Some(counterexample.into()),
        }
    }

    pub fn inconclusive(name: impl Into<String>, detail: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            status: Verdict::Inconclusive,
            detail: detail.into(),
            witness: None,
            counterexample: None,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> CheckItem {
        self.witness = Some(w);
        self
    }
}

#[derive(Debug, Clone)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

pub fn hash_file(path: &std::path::Path) -> Result<InputHash, FinlinError> {
    let bytes = std::fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(InputHash { path: path.display().to_string(), sha256: format!("{:x}", hasher.finalize()) })
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub seed: u64,
    pub items: Vec<CheckItem>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Vec<InputHash>, seed: u64) -> Report {
        Report { command: command.into(), inputs, seed, items: Vec::new(), timing_ms: 0 }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn verdict(&self) -> Verdict {
        self.items.iter().fold(Verdict::Pass, |acc, i| acc.worse(i.status))
    }

    pub fn merge(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn to_json(&self, quiet: bool) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert(
            "inputs".into(),
            Value::Array(
                self.inputs
                    .iter()
                    .map(|i| json!({ "path": i.path, "sha256": i.sha256 }))
                    .collect(),
            ),
        );
        obj.insert("seed".into(), json!(self.seed));
        obj.insert("verdict".into(), json!(self.verdict().as_str()));
        obj.insert(
            "items".into(),
            Value::Array(
                self.items
                    .iter()
                    .map(|i| {
                        let mut io = Map::new();
                        io.insert("name".into(), json!(i.name));
                        io.insert("status".into(), json!(i.status.as_str()));
                        io.insert("detail".into(), json!(i.detail));
                        io.insert(
                            "witness".into(),
                            if quiet {
                                Value::Null
                            } else {
                                i.witness.as_ref().map(|w| w.to_json()).unwrap_or(Value::Null)
                            },
                        );
                        io.insert(
                            "counterexample".into(),
                            i.counterexample.as_ref().map(|c| json!(c)).unwrap_or(Value::Null),
                        );
                        Value::Object(io)
                    })
                    .collect(),
            ),
        );
        obj.insert("timing_ms".into(), json!(self.timing_ms));
        Value::Object(obj)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} (seed {})\n", self.command, self.seed));
        for i in &self.items {
            let mark = match i.status {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Inconclusive => "INCONCLUSIVE",
            };
            let extra = i.counterexample.as_deref().unwrap_or(&i.detail);
            if extra.is_empty() {
                out.push_str(&format!("{mark} {}\n", i.name));
            } else {
                out.push_str(&format!("{mark} {} -- {}\n", i.name, extra));
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict().as_str()));
        out
    }

    /// Re-verifies all embedded witnesses from the serialized form.
    pub fn reverify_json(v: &Value) -> Result<bool, FinlinError> {
        let items = v
            .get("items")
            .and_then(Value::as_array)
            .ok_or_else(|| FinlinError::Syntax("report: missing items".into()))?;
        for item in items {
            if let Some(w) = item.get("witness") {
                if w.is_null() {
                    continue;
                }
                let witness = Witness::from_json(w)?;
                if !witness.reverify() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
