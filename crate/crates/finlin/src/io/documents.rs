//! The on-disk document formats: UTF-8 JSON for algebras, modules,
//! bimodules, Hopf algebras, diagrams and suites. Parsing resolves nested
//! references (a module's algebra may be a relative path or an inline
//! object) and validates the resulting objects; serialization is canonical
//! with a stable field order.

use crate::algebra::Algebra;
use crate::error::FinlinError;
use crate::exact::{parse_scalar, scalar_to_json, Field, Matrix, Scalar};
use crate::hopf::HopfAlgebra;
use crate::limits::FiniteDiagram;
use crate::modrep::{Bimodule, LeftModule};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// A parsed and validated input document.
#[derive(Debug, Clone)]
pub enum InputDocument {
    Algebra(Arc<Algebra>),
    Module(LeftModule),
    Bimodule(Bimodule),
    Hopf(HopfAlgebra),
    Diagram(FiniteDiagram),
    Suite(Suite),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::Algebra(_) => "algebra",
            InputDocument::Module(_) => "module",
            InputDocument::Bimodule(_) => "bimodule",
            InputDocument::Hopf(_) => "hopf",
            InputDocument::Diagram(_) => "diagram",
            InputDocument::Suite(_) => "suite",
        }
    }
}

/// One step of a named verification bundle.
#[derive(Debug, Clone)]
pub struct SuiteStep {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub flags: Map<String, Value>,
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub name: String,
    pub steps: Vec<SuiteStep>,
}

fn field_from_json(v: &Value) -> Result<Field, FinlinError> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Rationals),
        Value::Object(o) => {
            let p = o
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| FinlinError::Syntax("field must be \"Q\" or {\"Fp\": p}".into()))?;
            let f = Field::Prime(p);
            f.validate()?;
            Ok(f)
        }
        other => Err(FinlinError::Syntax(format!("bad field descriptor: {other}"))),
    }
}

fn field_to_json(f: &Field) -> Value {
    match f {
        Field::Rationals => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

fn matrix_from_json(field: &Field, v: &Value, what: &str) -> Result<Matrix, FinlinError> {
    let rows = v
        .as_array()
        .ok_or_else(|| FinlinError::Syntax(format!("{what}: expected an array of rows")))?;
    let mut data: Vec<Vec<Scalar>> = Vec::with_capacity(rows.len());
    let mut width: Option<usize> = None;
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| FinlinError::Syntax(format!("{what}: row {i} is not an array")))?;
        if let Some(w) = width {
            if row.len() != w {
                return Err(FinlinError::Syntax(format!("{what}: ragged rows")));
            }
        } else {
            width = Some(row.len());
        }
        data.push(row.iter().map(|e| parse_scalar(field, e)).collect::<Result<_, _>>()?);
    }
    if data.is_empty() {
        return Ok(Matrix::zero(*field, 0, 0));
    }
    Ok(Matrix::from_rows(*field, data))
}

fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(m.at(i, j))).collect()))
            .collect(),
    )
}

fn vector_from_json(field: &Field, v: &Value, what: &str) -> Result<Vec<Scalar>, FinlinError> {
    v.as_array()
        .ok_or_else(|| FinlinError::Syntax(format!("{what}: expected an array")))?
        .iter()
        .map(|e| parse_scalar(field, e))
        .collect()
}

fn actions_from_json(field: &Field, v: &Value, what: &str) -> Result<Vec<Matrix>, FinlinError> {
    v.as_array()
        .ok_or_else(|| FinlinError::Syntax(format!("{what}: expected an array of matrices")))?
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_json(field, m, &format!("{what}[{i}]")))
        .collect()
}

fn actions_to_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_to_json).collect())
}

/// Parses an algebra from its JSON object form.
fn algebra_from_obj(obj: &Map<String, Value>, label_hint: &str) -> Result<Arc<Algebra>, FinlinError> {
    let field = field_from_json(
        obj.get("field").ok_or_else(|| FinlinError::Syntax("algebra: missing field".into()))?,
    )?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FinlinError::Syntax("algebra: missing dim".into()))? as usize;
    let mult_v = obj
        .get("mult")
        .and_then(Value::as_array)
        .ok_or_else(|| FinlinError::Syntax("algebra: missing mult tensor".into()))?;
    if mult_v.len() != dim {
        return Err(FinlinError::Syntax("algebra: mult tensor has wrong outer length".into()));
    }
    let mut mult = Vec::with_capacity(dim);
    for (i, plane) in mult_v.iter().enumerate() {
        let plane = plane
            .as_array()
            .ok_or_else(|| FinlinError::Syntax(format!("algebra: mult[{i}] not an array")))?;
        if plane.len() != dim {
            return Err(FinlinError::Syntax(format!("algebra: mult[{i}] has wrong length")));
        }
        let mut rows = Vec::with_capacity(dim);
        for (j, entry) in plane.iter().enumerate() {
            rows.push(vector_from_json(&field, entry, &format!("mult[{i}][{j}]"))?);
            if rows.last().unwrap().len() != dim {
                return Err(FinlinError::Syntax(format!("algebra: mult[{i}][{j}] has wrong length")));
            }
        }
        mult.push(rows);
    }
    let unit = vector_from_json(
        &field,
        obj.get("unit").ok_or_else(|| FinlinError::Syntax("algebra: missing unit".into()))?,
        "unit",
    )?;
    let label = obj.get("label").and_then(Value::as_str).unwrap_or(label_hint);
    Ok(Arc::new(Algebra::new(field, dim, mult, unit, label)?))
}

fn algebra_to_obj(a: &Algebra) -> Value {
    let dim = a.dim();
    let mult = Value::Array(
        (0..dim)
            .map(|i| {
                Value::Array(
                    (0..dim)
                        .map(|j| {
                            Value::Array(
                                (0..dim)
                                    .map(|k| scalar_to_json(a.structure_constant(i, j, k)))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    let unit = Value::Array(
        (0..dim).map(|i| scalar_to_json(a.unit_vector().at(i, 0))).collect(),
    );
    let mut obj = Map::new();
    obj.insert("kind".into(), json!("algebra"));
    obj.insert("label".into(), json!(a.label()));
    obj.insert("field".into(), field_to_json(&a.field()));
    obj.insert("dim".into(), json!(dim));
    obj.insert("mult".into(), mult);
    obj.insert("unit".into(), unit);
    Value::Object(obj)
}

/// Resolves an `algebra` slot: either a relative path string or an inline
/// object.
fn resolve_algebra(v: &Value, base: &Path) -> Result<Arc<Algebra>, FinlinError> {
    match v {
        Value::String(p) => {
            let path = base.join(p);
            match parse_file(&path)? {
                InputDocument::Algebra(a) => Ok(a),
                InputDocument::Hopf(h) => Ok(h.algebra().clone()),
                other => Err(FinlinError::Semantic(format!(
                    "referenced document {} is a {}, not an algebra",
                    path.display(),
                    other.kind()
                ))),
            }
        }
        Value::Object(o) => algebra_from_obj(o, "inline"),
        other => Err(FinlinError::Syntax(format!("algebra reference must be path or object: {other}"))),
    }
}

fn module_from_obj(obj: &Map<String, Value>, base: &Path, label_hint: &str) -> Result<LeftModule, FinlinError> {
    let algebra = resolve_algebra(
        obj.get("algebra").ok_or_else(|| FinlinError::Syntax("module: missing algebra".into()))?,
        base,
    )?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FinlinError::Syntax("module: missing dim".into()))? as usize;
    let field = algebra.field();
    let action = actions_from_json(
        &field,
        obj.get("left_action")
            .ok_or_else(|| FinlinError::Syntax("module: missing left_action".into()))?,
        "left_action",
    )?;
    let label = obj.get("label").and_then(Value::as_str).unwrap_or(label_hint);
    LeftModule::new(algebra, dim, action, label)
}

fn bimodule_from_obj(obj: &Map<String, Value>, base: &Path, label_hint: &str) -> Result<Bimodule, FinlinError> {
    let left_algebra = resolve_algebra(
        obj.get("left_algebra")
            .ok_or_else(|| FinlinError::Syntax("bimodule: missing left_algebra".into()))?,
        base,
    )?;
    let right_algebra = resolve_algebra(
        obj.get("right_algebra")
            .ok_or_else(|| FinlinError::Syntax("bimodule: missing right_algebra".into()))?,
        base,
    )?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| FinlinError::Syntax("bimodule: missing dim".into()))? as usize;
    let field = left_algebra.field();
    let left = actions_from_json(
        &field,
        obj.get("left_action")
            .ok_or_else(|| FinlinError::Syntax("bimodule: missing left_action".into()))?,
        "left_action",
    )?;
    let right = actions_from_json(
        &field,
        obj.get("right_action")
            .ok_or_else(|| FinlinError::Syntax("bimodule: missing right_action".into()))?,
        "right_action",
    )?;
    let label = obj.get("label").and_then(Value::as_str).unwrap_or(label_hint);
    Bimodule::new(left_algebra, right_algebra, dim, left, right, label)
}

fn hopf_from_obj(obj: &Map<String, Value>, label_hint: &str) -> Result<HopfAlgebra, FinlinError> {
    let algebra = algebra_from_obj(obj, label_hint)?;
    let field = algebra.field();
    let n = algebra.dim();
    let comult_v = obj
        .get("comult")
        .and_then(Value::as_array)
        .ok_or_else(|| FinlinError::Syntax("hopf: missing comult".into()))?;
    if comult_v.len() != n {
        return Err(FinlinError::Syntax("hopf: comult has wrong outer length".into()));
    }
    // comult[i][j][k] = coefficient of e_j (x) e_k in Delta(e_i)
    let mut comult = Matrix::zero(field, n * n, n);
    for (i, plane) in comult_v.iter().enumerate() {
        let plane = plane
            .as_array()
            .ok_or_else(|| FinlinError::Syntax(format!("hopf: comult[{i}] not an array")))?;
        for (j, row) in plane.iter().enumerate() {
            let row = vector_from_json(&field, row, &format!("comult[{i}][{j}]"))?;
            for (k, s) in row.into_iter().enumerate() {
                comult.set(j * n + k, i, s);
            }
        }
    }
    let counit = Matrix::from_rows(
        field,
        vec![vector_from_json(
            &field,
            obj.get("counit").ok_or_else(|| FinlinError::Syntax("hopf: missing counit".into()))?,
            "counit",
        )?],
    );
    let antipode = matrix_from_json(
        &field,
        obj.get("antipode").ok_or_else(|| FinlinError::Syntax("hopf: missing antipode".into()))?,
        "antipode",
    )?;
    let label = obj.get("label").and_then(Value::as_str).unwrap_or(label_hint).to_string();
    HopfAlgebra::new(algebra, comult, counit, antipode, label)
}

fn hopf_to_obj(h: &HopfAlgebra) -> Value {
    let mut obj = match algebra_to_obj(h.algebra()) {
        Value::Object(o) => o,
        _ => unreachable!(),
    };
    obj.insert("kind".into(), json!("hopf"));
    obj.insert("label".into(), json!(h.label()));
    let n = h.dim();
    let comult = Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                (0..n)
                                    .map(|k| scalar_to_json(h.comult().at(j * n + k, i)))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    obj.insert("comult".into(), comult);
    obj.insert(
        "counit".into(),
        Value::Array((0..n).map(|i| scalar_to_json(h.counit().at(0, i))).collect()),
    );
    obj.insert("antipode".into(), matrix_to_json(h.antipode()));
    Value::Object(obj)
}

fn module_to_obj(m: &LeftModule) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!("module"));
    obj.insert("label".into(), json!(m.label()));
    obj.insert("algebra".into(), algebra_to_obj(m.algebra()));
    obj.insert("dim".into(), json!(m.dim()));
    obj.insert("left_action".into(), actions_to_json(m.actions()));
    Value::Object(obj)
}

fn bimodule_to_obj(b: &Bimodule) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!("bimodule"));
    obj.insert("label".into(), json!(b.label()));
    obj.insert("left_algebra".into(), algebra_to_obj(b.left_algebra()));
    obj.insert("right_algebra".into(), algebra_to_obj(b.right_algebra()));
    obj.insert("dim".into(), json!(b.dim()));
    obj.insert("left_action".into(), actions_to_json(b.left_actions()));
    obj.insert("right_action".into(), actions_to_json(b.right_actions()));
    Value::Object(obj)
}

/// Parses a document from text. `base` is the directory used to resolve
/// relative references.
pub fn parse(text: &str, base: &Path) -> Result<InputDocument, FinlinError> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        FinlinError::Syntax(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let obj = v
        .as_object()
        .ok_or_else(|| FinlinError::Syntax("document must be a JSON object".into()))?;
    let kind = obj.get("kind").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| {
        // infer from shape
        if obj.contains_key("steps") {
            "suite".into()
        } else if obj.contains_key("objects") {
            "diagram".into()
        } else if obj.contains_key("comult") {
            "hopf".into()
        } else if obj.contains_key("mult") {
            "algebra".into()
        } else if obj.contains_key("right_action") && obj.contains_key("left_algebra") {
            "bimodule".into()
        } else {
            "module".into()
        }
    });
    match kind.as_str() {
        "algebra" => Ok(InputDocument::Algebra(algebra_from_obj(obj, "algebra")?)),
        "module" => Ok(InputDocument::Module(module_from_obj(obj, base, "module")?)),
        "bimodule" => Ok(InputDocument::Bimodule(bimodule_from_obj(obj, base, "bimodule")?)),
        "hopf" => Ok(InputDocument::Hopf(hopf_from_obj(obj, "hopf")?)),
        "diagram" => {
            let algebra = resolve_algebra(
                obj.get("algebra")
                    .ok_or_else(|| FinlinError::Syntax("diagram: missing algebra".into()))?,
                base,
            )?;
            let objs = obj
                .get("objects")
                .and_then(Value::as_array)
                .ok_or_else(|| FinlinError::Syntax("diagram: missing objects".into()))?;
            let mut modules = Vec::with_capacity(objs.len());
            for (i, o) in objs.iter().enumerate() {
                let m = match o {
                    Value::String(p) => {
                        let path = base.join(p);
                        match parse_file(&path)? {
                            InputDocument::Module(m) => m,
                            other => {
                                return Err(FinlinError::Semantic(format!(
                                    "diagram object {} is a {}, not a module",
                                    path.display(),
                                    other.kind()
                                )))
                            }
                        }
                    }
                    Value::Object(mo) => module_from_obj(mo, base, &format!("object{i}"))?,
                    other => {
                        return Err(FinlinError::Syntax(format!(
                            "diagram object must be path or object: {other}"
                        )))
                    }
                };
                modules.push(m);
            }
            Ok(InputDocument::Diagram(FiniteDiagram::new(algebra, modules)?))
        }
        "suite" => {
            let name = obj
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| FinlinError::Syntax("suite: missing name".into()))?
                .to_string();
            let steps_v = obj
                .get("steps")
                .and_then(Value::as_array)
                .ok_or_else(|| FinlinError::Syntax("suite: missing steps".into()))?;
            let mut steps = Vec::with_capacity(steps_v.len());
            for (i, s) in steps_v.iter().enumerate() {
                let so = s
                    .as_object()
                    .ok_or_else(|| FinlinError::Syntax(format!("suite step {i} not an object")))?;
                let command = so
                    .get("command")
                    .and_then(Value::as_str)
                    .ok_or_else(|| FinlinError::Syntax(format!("suite step {i}: missing command")))?
                    .to_string();
                let inputs = so
                    .get("inputs")
                    .and_then(Value::as_array)
                    .map(|a| {
                        a.iter()
                            .filter_map(Value::as_str)
                            .map(|p| base.join(p))
                            .collect::<Vec<_>>()
                    })
                    .unwrap_or_default();
                let flags = so
                    .get("flags")
                    .and_then(Value::as_object)
                    .cloned()
                    .unwrap_or_default();
                steps.push(SuiteStep { command, inputs, flags });
            }
            Ok(InputDocument::Suite(Suite { name, steps }))
        }
        other => Err(FinlinError::Syntax(format!("unknown document kind {other:?}"))),
    }
}

/// Parses a document from a file, resolving references against its
/// directory.
pub fn parse_file(path: &Path) -> Result<InputDocument, FinlinError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FinlinError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse(&text, base)
}

/// Canonical serialization with a stable field order.
pub fn serialize(doc: &InputDocument) -> String {
    let v = match doc {
        InputDocument::Algebra(a) => algebra_to_obj(a),
        InputDocument::Module(m) => module_to_obj(m),
        InputDocument::Bimodule(b) => bimodule_to_obj(b),
        InputDocument::Hopf(h) => hopf_to_obj(h),
        InputDocument::Diagram(d) => {
            let mut obj = Map::new();
            obj.insert("kind".into(), json!("diagram"));
            obj.insert("algebra".into(), algebra_to_obj(d.algebra()));
            obj.insert(
                "objects".into(),
                Value::Array(d.objects().iter().map(module_to_obj).collect()),
            );
            Value::Object(obj)
        }
        InputDocument::Suite(s) => {
            let mut obj = Map::new();
            obj.insert("kind".into(), json!("suite"));
            obj.insert("name".into(), json!(s.name));
            obj.insert(
                "steps".into(),
                Value::Array(
                    s.steps
                        .iter()
                        .map(|st| {
                            let mut so = Map::new();
                            so.insert("command".into(), json!(st.command));
                            so.insert(
                                "inputs".into(),
                                Value::Array(
                                    st.inputs
                                        .iter()
                                        .map(|p| json!(p.to_string_lossy()))
                                        .collect(),
                                ),
                            );
                            so.insert("flags".into(), Value::Object(st.flags.clone()));
                            Value::Object(so)
                        })
                        .collect(),
                ),
            );
            Value::Object(obj)
        }
    };
    serde_json::to_string_pretty(&v).expect("serialization cannot fail")
}

/// Serialization helpers shared with the report writer.
pub fn matrix_json(m: &Matrix) -> Value {
    matrix_to_json(m)
}

pub fn matrix_from_value(field: &Field, v: &Value) -> Result<Matrix, FinlinError> {
    matrix_from_json(field, v, "matrix")
}

pub fn field_json(f: &Field) -> Value {
    field_to_json(f)
}

pub fn field_from_value(v: &Value) -> Result<Field, FinlinError> {
    field_from_json(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;

    #[test]
    fn minimal_field_algebra_round_trip() {
        let text = r#"{"field": "Q", "dim": 1, "mult": [[[1]]], "unit": [1]}"#;
        let doc = parse(text, Path::new(".")).unwrap();
        let InputDocument::Algebra(a) = &doc else { panic!("expected algebra") };
        assert_eq!(a.dim(), 1);
        let s = serialize(&doc);
        let doc2 = parse(&s, Path::new(".")).unwrap();
        assert_eq!(serialize(&doc2), s, "canonical round trip");
    }

    #[test]
    fn non_associative_table_is_semantic_error() {
        // e1*e1 = e2, e1*e2 = 1 but e2*e1 = 0: (e1 e1) e1 != e1 (e1 e1)
        let text = r#"{"field": "Q", "dim": 3,
            "mult": [[[1,0,0],[0,1,0],[0,0,1]],
                     [[0,1,0],[0,0,1],[1,0,0]],
                     [[0,0,1],[0,0,0],[0,0,0]]],
            "unit": [1,0,0]}"#;
        let err = parse(text, Path::new(".")).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("semantic"), "{msg}");
    }

    #[test]
    fn syntax_error_carries_location() {
        let err = parse("{ not json", Path::new(".")).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn rational_scalars_parse() {
        let text = r#"{"field": "Q", "dim": 1, "mult": [[["2/2"]]], "unit": ["1/1"]}"#;
        let doc = parse(text, Path::new(".")).unwrap();
        let InputDocument::Algebra(a) = &doc else { panic!() };
        assert!(a.structure_constant(0, 0, 0).is_one());
    }

    #[test]
    fn serialize_standard_algebras_parse_back() {
        for alg in [matrix_algebra(Field::Rationals, 2), upper_triangular(Field::Rationals, 3)] {
            let doc = InputDocument::Algebra(Arc::new(alg));
            let s = serialize(&doc);
            let doc2 = parse(&s, Path::new(".")).unwrap();
            let (InputDocument::Algebra(a), InputDocument::Algebra(b)) = (&doc, &doc2) else {
                panic!()
            };
            assert_eq!(a.structure_tensor(), b.structure_tensor());
        }
    }
}
