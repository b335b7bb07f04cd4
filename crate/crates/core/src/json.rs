//! Polytope JSON documents and serde helpers for big integers.
//!
//! Integers are written as bare JSON numbers of any size. Rationals are
//! written as numbers when integral and as `"p/q"` strings otherwise.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};
use crate::polytope::Polytope;

fn number(x: &Int) -> Number {
    Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

pub fn int_value(x: &Int) -> Value {
    Value::Number(number(x))
}

pub fn rat_value(x: &Rat) -> Value {
    if x.is_integer() {
        int_value(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn ser_int<S: Serializer>(x: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
    number(x).serialize(s)
}

pub fn ser_int_vec<S: Serializer>(xs: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(number).collect::<Vec<_>>().serialize(s)
}

pub fn ser_int_rows<S: Serializer>(xs: &[Vec<Int>], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(|r| r.iter().map(number).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
}

pub fn ser_opt_int<S: Serializer>(x: &Option<Int>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.as_ref().map(number).serialize(s)
}

pub fn ser_int_map<S: Serializer>(
    m: &BTreeMap<usize, Int>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(&k.to_string(), &number(v))?;
    }
    out.end()
}

pub fn ser_opt_rat<S: Serializer>(x: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    x.as_ref().map(rat_value).serialize(s)
}

pub fn ser_rat<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    rat_value(x).serialize(s)
}

/// The interchange document `{ "name"?, "ambient_dim", "vertices" }`.
pub fn polytope_to_value(p: &Polytope) -> Value {
    let mut m = Map::new();
    if let Some(name) = p.name() {
        m.insert("name".into(), Value::String(name.to_string()));
    }
    m.insert("ambient_dim".into(), Value::from(p.ambient_dim()));
    let verts = p
        .vertices()
        .iter()
        .map(|v| Value::Array(v.iter().map(int_value).collect()))
        .collect();
    m.insert("vertices".into(), Value::Array(verts));
    Value::Object(m)
}

pub fn polytope_to_string(p: &Polytope) -> String {
    serde_json::to_string_pretty(&polytope_to_value(p)).expect("serializable")
}

fn parse_int(v: &Value, field: &str) -> Result<Int> {
    let n = match v {
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::malformed(field, "expected an integer")),
    };
    Int::from_str(&n).map_err(|_| Error::malformed(field, format!("expected an integer, got {n}")))
}

/// Parses a polytope document. Errors name the offending field.
pub fn polytope_from_value(doc: &Value) -> Result<Polytope> {
    let obj = doc.as_object().ok_or_else(|| Error::malformed("$", "expected a JSON object"))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(Error::malformed("name", "expected a string")),
    };
    let ambient = obj.get("ambient_dim").ok_or_else(|| Error::malformed("ambient_dim", "missing field"))?;
    let ambient: usize = ambient
        .as_u64()
        .and_then(|a| usize::try_from(a).ok())
        .ok_or_else(|| Error::malformed("ambient_dim", "expected a nonnegative integer"))?;
    let verts = obj.get("vertices").ok_or_else(|| Error::malformed("vertices", "missing field"))?;
    let verts = verts.as_array().ok_or_else(|| Error::malformed("vertices", "expected an array"))?;
    if verts.is_empty() {
        return Err(Error::malformed("vertices", "expected at least one vertex"));
    }
    let mut points = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().enumerate() {
        let field = format!("vertices[{i}]");
        let coords = v.as_array().ok_or_else(|| Error::malformed(&field, "expected an array"))?;
        if coords.len() != ambient {
            return Err(Error::malformed(
                &field,
                format!("expected {ambient} coordinates, got {}", coords.len()),
            ));
        }
        let point = coords
            .iter()
            .enumerate()
            .map(|(j, x)| parse_int(x, &format!("vertices[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        points.push(point);
    }
    if let Some(key) = obj.keys().find(|k| !["name", "ambient_dim", "vertices"].contains(&k.as_str())) {
        return Err(Error::malformed(key, "unknown field"));
    }
    let p = Polytope::from_vertices(&points)?;
    Ok(match name {
        Some(n) => p.with_name(n),
        None => p,
    })
}

pub fn polytope_from_str(text: &str) -> Result<Polytope> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::malformed("$", format!("invalid JSON: {e}")))?;
    polytope_from_value(&doc)
}
