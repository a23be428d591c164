//! JSON encoding of fields, elements, matrices, polynomials, systems,
//! actions and erased streams.
//!
//! Elements are bare integers over prime fields and little-endian
//! coefficient arrays otherwise; both forms are accepted on input.

use serde_json::{json, Map, Value};

use crate::actions::{ActionKind, ActionSpec};
use crate::erasure::ErasedWord;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyMatrix};
use crate::system::IsoSystem;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| parse_err(format!("{what}: expected a non-negative integer, got {v}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    as_u64(v, what).map(|x| x as usize)
}

fn field_of<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

pub fn field_to_json(spec: &FieldSpec) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(spec.p()));
    m.insert("r".into(), json!(spec.r()));
    if let Some(modulus) = spec.modulus() {
        m.insert("modulus".into(), json!(modulus));
    }
    Value::Object(m)
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    let p = as_u64(field_of(v, "p")?, "p")?;
    let r = match v.get("r") {
        Some(r) => as_usize(r, "r")?,
        None => 1,
    };
    let modulus = match v.get("modulus") {
        None | Some(Value::Null) => None,
        Some(Value::Array(cs)) => Some(
            cs.iter()
                .map(|c| as_u64(c, "modulus"))
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(other) => return Err(parse_err(format!("modulus: expected an array, got {other}"))),
    };
    FieldSpec::new(p, r, modulus)
}

pub fn element_to_json(e: &FieldElement) -> Value {
    let cs = e.coeffs();
    if e.spec().r() == 1 {
        return json!(cs.first().copied().unwrap_or(0));
    }
    let len = cs.iter().rposition(|&c| c != 0).map_or(1, |i| i + 1);
    json!(cs[..len].to_vec())
}

/// Accepts a bare integer (reduced mod p, negative allowed over prime
/// fields) or a little-endian coefficient array.
pub fn element_from_json(spec: &FieldSpec, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                if spec.r() == 1 {
                    return Ok(spec.from_u64(u));
                }
                return spec.element(&[u]);
            }
            if let Some(i) = n.as_i64() {
                if spec.r() == 1 {
                    return Ok(spec.from_i64(i));
                }
            }
            Err(parse_err(format!("invalid element {v}")))
        }
        Value::Array(cs) => {
            let cs = cs
                .iter()
                .map(|c| as_u64(c, "element coefficient"))
                .collect::<Result<Vec<_>>>()?;
            spec.element(&cs)
        }
        _ => Err(parse_err(format!("invalid element {v}"))),
    }
}

fn rows_to_json<T>(rows: usize, cols: usize, get: impl Fn(usize, usize) -> T, enc: impl Fn(T) -> Value) -> Value {
    Value::Array(
        (0..rows)
            .map(|i| Value::Array((0..cols).map(|j| enc(get(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": matrix_entries_to_json(m),
    })
}

/// Bare array of rows.
pub fn matrix_entries_to_json(m: &Matrix) -> Value {
    rows_to_json(m.rows(), m.cols(), |i, j| m.get(i, j), element_to_json)
}

/// `(rows, cols, entries)` from either the object form or a bare array of
/// rows.
fn split_shape(v: &Value) -> Result<(Option<usize>, Option<usize>, &Vec<Value>)> {
    match v {
        Value::Array(rows) => Ok((None, None, rows)),
        Value::Object(_) => {
            let rows = v.get("rows").map(|r| as_usize(r, "rows")).transpose()?;
            let cols = v.get("cols").map(|c| as_usize(c, "cols")).transpose()?;
            match field_of(v, "entries")? {
                Value::Array(e) => Ok((rows, cols, e)),
                other => Err(parse_err(format!("entries: expected an array, got {other}"))),
            }
        }
        other => Err(parse_err(format!("expected a matrix, got {other}"))),
    }
}

fn grid_from_json<T>(
    v: &Value,
    cols_hint: Option<usize>,
    mut dec: impl FnMut(&Value) -> Result<T>,
) -> Result<(usize, usize, Vec<Vec<T>>)> {
    let (rows, cols, entries) = split_shape(v)?;
    let mut out = Vec::with_capacity(entries.len());
    for row in entries {
        let Value::Array(row) = row else {
            return Err(parse_err(format!("matrix row must be an array, got {row}")));
        };
        out.push(row.iter().map(&mut dec).collect::<Result<Vec<T>>>()?);
    }
    let r = out.len();
    let c = out.first().map(Vec::len).or(cols).or(cols_hint).unwrap_or(0);
    if rows.is_some_and(|x| x != r) || cols.is_some_and(|x| x != c) || out.iter().any(|row| row.len() != c) {
        return Err(Error::DimensionMismatch(format!(
            "declared shape {rows:?}x{cols:?} does not match entries"
        )));
    }
    Ok((r, c, out))
}

pub fn matrix_from_json(spec: &FieldSpec, v: &Value) -> Result<Matrix> {
    matrix_from_json_shaped(spec, v, None)
}

/// Like [`matrix_from_json`] but resolves the column count of an empty bare
/// array from `cols`.
pub fn matrix_from_json_shaped(spec: &FieldSpec, v: &Value, cols: Option<usize>) -> Result<Matrix> {
    let (r, c, rows) = grid_from_json(v, cols, |e| element_from_json(spec, e))?;
    if r == 0 {
        return Ok(Matrix::zeros(spec, 0, c));
    }
    Matrix::from_rows(spec, rows)
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(element_to_json).collect())
}

/// A coefficient array, or a bare element read as a constant.
pub fn poly_from_json(spec: &FieldSpec, v: &Value) -> Result<Poly> {
    match v {
        Value::Array(cs) if spec.r() == 1 || cs.iter().all(Value::is_array) || cs.is_empty() => {
            let cs = cs
                .iter()
                .map(|c| element_from_json(spec, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(spec.clone(), cs))
        }
        _ => Ok(Poly::new(spec.clone(), vec![element_from_json(spec, v)?])),
    }
}

pub fn poly_matrix_to_json(m: &PolyMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": rows_to_json(m.rows(), m.cols(), |i, j| m.get(i, j), poly_to_json),
    })
}

pub fn poly_matrix_from_json(spec: &FieldSpec, v: &Value) -> Result<PolyMatrix> {
    let (r, c, rows) = grid_from_json(v, None, |e| poly_from_json(spec, e))?;
    if r == 0 {
        return Ok(PolyMatrix::zeros(spec, 0, c));
    }
    PolyMatrix::from_rows(spec, rows)
}

pub fn system_to_json(sys: &IsoSystem) -> Value {
    json!({
        "field": field_to_json(sys.spec()),
        "n": sys.n(),
        "k": sys.k(),
        "delta": sys.delta(),
        "A": matrix_entries_to_json(sys.a()),
        "B": matrix_entries_to_json(sys.b()),
        "C": matrix_entries_to_json(sys.c()),
        "D": matrix_entries_to_json(sys.d()),
    })
}

/// Canonical text form of a system: one key per line in a fixed order,
/// compact values. This is the layout of the shipped fixture files.
pub fn system_to_string(sys: &IsoSystem) -> String {
    let v = system_to_json(sys);
    let lines: Vec<String> = ["field", "n", "k", "delta", "A", "B", "C", "D"]
        .iter()
        .map(|k| format!("  \"{k}\": {}", v[*k]))
        .collect();
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

pub fn system_from_json(v: &Value) -> Result<IsoSystem> {
    let spec = field_from_json(field_of(v, "field")?)?;
    let n = as_usize(field_of(v, "n")?, "n")?;
    let k = as_usize(field_of(v, "k")?, "k")?;
    let delta = as_usize(field_of(v, "delta")?, "delta")?;
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    let a = matrix_from_json_shaped(&spec, field_of(v, "A")?, Some(delta))?;
    let b = matrix_from_json_shaped(&spec, field_of(v, "B")?, Some(k))?;
    let c = matrix_from_json_shaped(&spec, field_of(v, "C")?, Some(delta))?;
    let d = matrix_from_json_shaped(&spec, field_of(v, "D")?, Some(k))?;
    let sys = IsoSystem::new(a, b, c, d)?;
    if (sys.n(), sys.k(), sys.delta()) != (n, k, delta) {
        return Err(Error::DimensionMismatch(format!(
            "declared (n, k, delta) = ({n}, {k}, {delta}) but matrices give ({}, {}, {})",
            sys.n(),
            sys.k(),
            sys.delta()
        )));
    }
    Ok(sys)
}

pub fn action_to_json(act: &ActionSpec) -> Value {
    json!({ "kind": act.kind().name(), "matrix": matrix_to_json(act.matrix()) })
}

pub fn action_from_json(spec: &FieldSpec, v: &Value) -> Result<ActionSpec> {
    let kind = field_of(v, "kind")?
        .as_str()
        .ok_or_else(|| parse_err("kind must be a string"))?;
    ActionSpec::new(ActionKind::parse(kind)?, matrix_from_json(spec, field_of(v, "matrix")?)?)
}

/// One line per block, `null` for an erased symbol.
pub fn stream_to_jsonl(w: &ErasedWord) -> String {
    let mut out = String::new();
    for block in w.symbols.chunks(w.n) {
        let line: Vec<Value> = block
            .iter()
            .map(|s| s.as_ref().map_or(Value::Null, element_to_json))
            .collect();
        out.push_str(&Value::Array(line).to_string());
        out.push('\n');
    }
    out
}

pub fn stream_from_jsonl(spec: &FieldSpec, n: usize, text: &str) -> Result<ErasedWord> {
    let mut symbols = Vec::new();
    for (no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line)?;
        let Value::Array(block) = v else {
            return Err(parse_err(format!("line {}: expected an array", no + 1)));
        };
        if block.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "line {}: block has {} symbols, expected {n}",
                no + 1,
                block.len()
            )));
        }
        for s in &block {
            symbols.push(match s {
                Value::Null => None,
                e => Some(element_from_json(spec, e)?),
            });
        }
    }
    ErasedWord::new(n, symbols)
}
