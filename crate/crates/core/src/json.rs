//! JSON encodings of curves, points and divisors.
//!
//! Rationals are strings (`"3"`, `"-7/2"`); prime-field elements are written
//! as integers in `[0, p)`. On input, both fields also accept the other shape
//! (a JSON integer for a rational, a decimal string for an `F_p` element).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cantor::MumfordDivisor;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groupoid::{CurveParams, GroupoidPoint};
use crate::poly::Poly;

#[derive(Serialize, Deserialize)]
struct CurveJson {
    genus: usize,
    field: String,
    lambda: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    p_even: Vec<Value>,
    p_odd: Vec<Value>,
    z: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    u: Vec<Value>,
    v: Vec<Value>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Prime { value, .. } => Value::from(*value),
    }
}

pub fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(field, s),
        Value::Number(n) if n.is_i64() || n.is_u64() => Scalar::parse(field, &n.to_string()),
        other => Err(Error::Parse(format!("expected a scalar, found {other}"))),
    }
}

fn scalars_to_json(v: &[Scalar]) -> Vec<Value> {
    v.iter().map(scalar_to_json).collect()
}

fn scalars_from_json(field: FieldSpec, v: &[Value]) -> Result<Vec<Scalar>> {
    v.iter().map(|x| scalar_from_json(field, x)).collect()
}

pub fn curve_to_json(c: &CurveParams) -> Value {
    let j = CurveJson { genus: c.genus(), field: c.field().to_string(), lambda: scalars_to_json(&c.ascending()) };
    serde_json::to_value(j).expect("plain data")
}

pub fn curve_from_json(v: &Value) -> Result<CurveParams> {
    let j: CurveJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let field: FieldSpec = j.field.parse()?;
    CurveParams::from_ascending(field, j.genus, scalars_from_json(field, &j.lambda)?)
}

pub fn point_to_json(a: &GroupoidPoint) -> Value {
    let j = PointJson {
        p_even: scalars_to_json(a.p_even()),
        p_odd: scalars_to_json(a.p_odd()),
        z: scalars_to_json(a.z()),
    };
    serde_json::to_value(j).expect("plain data")
}

pub fn point_from_json(field: FieldSpec, v: &Value) -> Result<GroupoidPoint> {
    let j: PointJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    GroupoidPoint::new(
        field,
        scalars_from_json(field, &j.p_even)?,
        scalars_from_json(field, &j.p_odd)?,
        scalars_from_json(field, &j.z)?,
    )
}

pub fn divisor_to_json(d: &MumfordDivisor) -> Value {
    let j = DivisorJson { u: scalars_to_json(d.u().coeffs()), v: scalars_to_json(d.v().coeffs()) };
    serde_json::to_value(j).expect("plain data")
}

pub fn divisor_from_json(c: &CurveParams, v: &Value) -> Result<MumfordDivisor> {
    let j: DivisorJson = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let field = c.field();
    let u = Poly::new(field, scalars_from_json(field, &j.u)?)?;
    let v = Poly::new(field, scalars_from_json(field, &j.v)?)?;
    MumfordDivisor::new(u, v, c)
}

/// Parses a document; a JSON syntax error becomes [`Error::Parse`].
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(parse_err)
}
