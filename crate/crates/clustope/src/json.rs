//! JSON encodings. Big integers are decimal strings; point coordinates and
//! exponents are plain JSON numbers.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exchange::ExchangeMatrix;
use crate::geometry::Fan;
use crate::laurent::{LaurentPoly, Monomial};
use crate::matrix::Matrix;
use crate::polytope::WeightedPolytope;
use crate::seed::SeedState;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Accepts a decimal string or a JSON integer.
pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| parse_err(format!("not an integer: {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err(format!("not an integer: {n}"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

fn int_vec<T: TryFrom<i64>>(v: &Value, what: &str) -> Result<Vec<T>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array")))?
        .iter()
        .map(|e| {
            e.as_i64()
                .and_then(|x| T::try_from(x).ok())
                .ok_or_else(|| parse_err(format!("bad entry {e} in {what}")))
        })
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = m
        .rows_vec()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect();
    json!({ "n": m.nrows(), "rows": rows })
}

/// Reads `{"n":..,"rows":[[..]]}` or a bare array of rows.
pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = match v {
        Value::Array(_) => v,
        Value::Object(o) => o.get("rows").ok_or_else(|| parse_err("matrix object needs \"rows\""))?,
        _ => return Err(parse_err("matrix must be an object or an array of rows")),
    };
    let rows: Vec<Vec<BigInt>> = rows
        .as_array()
        .ok_or_else(|| parse_err("rows must be an array"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("each row must be an array"))?
                .iter()
                .map(bigint_from_json)
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = Matrix::from_rows(rows)?;
    if let Some(n) = v.get("n").and_then(Value::as_u64) {
        if n as usize != m.nrows() {
            return Err(parse_err(format!("\"n\" is {n} but there are {} rows", m.nrows())));
        }
    }
    Ok(m)
}

pub fn exchange_from_json(v: &Value) -> Result<ExchangeMatrix> {
    ExchangeMatrix::new(matrix_from_json(v)?)
}

/// Terms in ascending monomial order.
pub fn laurent_to_json(f: &LaurentPoly) -> Value {
    Value::Array(
        f.terms()
            .map(|(m, c)| json!({ "x": m.x, "y": m.y, "c": c.to_string() }))
            .collect(),
    )
}

pub fn laurent_from_json(n: usize, v: &Value) -> Result<LaurentPoly> {
    let terms = v
        .as_array()
        .ok_or_else(|| parse_err("a Laurent polynomial is an array of terms"))?
        .iter()
        .map(|t| {
            let x: Vec<i32> = int_vec(t.get("x").ok_or_else(|| parse_err("term needs \"x\""))?, "x")?;
            let y: Vec<u32> = int_vec(t.get("y").ok_or_else(|| parse_err("term needs \"y\""))?, "y")?;
            let c = bigint_from_json(t.get("c").ok_or_else(|| parse_err("term needs \"c\""))?)?;
            if x.len() != n || y.len() != n {
                return Err(parse_err(format!("term exponents must have length {n}")));
            }
            Ok((Monomial { y, x }, c))
        })
        .collect::<Result<Vec<_>>>()?;
    LaurentPoly::from_terms(n, terms)
}

pub fn polytope_to_json(p: &WeightedPolytope) -> Value {
    let points: Vec<Value> = p
        .weights()
        .iter()
        .map(|(pt, w)| json!({ "p": pt, "w": w.to_string() }))
        .collect();
    json!({ "n": p.n(), "points": points })
}

pub fn polytope_from_json(v: &Value) -> Result<WeightedPolytope> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("polytope needs \"n\""))? as usize;
    let pts = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("polytope needs \"points\""))?
        .iter()
        .map(|e| {
            let p: Vec<i64> = int_vec(e.get("p").ok_or_else(|| parse_err("point needs \"p\""))?, "p")?;
            let w = bigint_from_json(e.get("w").ok_or_else(|| parse_err("point needs \"w\""))?)?;
            Ok((p, w))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedPolytope::new(n, pts)
}

/// Each cone as its list of generators; lineality directions appear with both signs.
pub fn fan_to_json(f: &Fan) -> Value {
    let cones: Vec<Value> = f.cones.iter().map(|c| json!(c.generators())).collect();
    json!({ "cones": cones })
}

pub fn seed_to_json(s: &SeedState) -> Result<Value> {
    let n = s.n();
    let mut g = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for i in 0..n {
        g.push(s.g_vector(i)?.iter().map(BigInt::to_string).collect::<Vec<_>>());
        d.push(s.d_vector(i)?);
        f.push(laurent_to_json(&s.f_polynomial(i)?));
    }
    let vars: Vec<Value> = s.vars().iter().map(laurent_to_json).collect();
    Ok(json!({
        "B": matrix_to_json(s.b().matrix()),
        "C": matrix_to_json(s.c()),
        "vars": vars,
        "g": g,
        "d": d,
        "F": f,
    }))
}
