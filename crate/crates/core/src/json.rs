//! JSON reading and writing for complexes, morphisms, chains and cells.
//!
//! Complexes use `{"basis": [[..], ..], "diff": {tok: {tok: int}}, "aug": {tok: int}}`.
//! Morphisms use `{"images": {tok: {tok: int}}}`; a generator with no entry
//! maps to zero. Key order follows basis order, so output is deterministic.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cell::Cell;
use crate::chain::Chain;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::morphism::AdcMorphism;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(format!("{what} is not an integer")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what} is not an object")))
}

pub fn complex_from_value(v: &Value) -> Result<Complex> {
    let basis: Vec<Vec<String>> = serde_json::from_value(v.get("basis").cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(format!("basis: {e}")))?;
    let mut diff = Vec::new();
    if let Some(d) = v.get("diff") {
        for (tok, terms) in object(d, "diff")? {
            let mut ts = Vec::new();
            for (s, c) in object(terms, &format!("diff of {tok}"))? {
                ts.push((s.clone(), int(c, &format!("coefficient of {s} in d{tok}"))?));
            }
            diff.push((tok.clone(), ts));
        }
    }
    let mut aug = Vec::new();
    match v.get("aug") {
        Some(a) => {
            for (tok, c) in object(a, "aug")? {
                aug.push((tok.clone(), int(c, &format!("augmentation of {tok}"))?));
            }
        }
        None => {
            // vertices default to augmentation 1
            for t in basis.first().into_iter().flatten() {
                aug.push((t.clone(), 1));
            }
        }
    }
    Complex::from_named(basis, &diff, &aug)
}

pub fn complex_from_str(s: &str) -> Result<Complex> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(e.to_string()))?;
    complex_from_value(&v)
}

pub fn chain_to_value(k: &Complex, x: &Chain) -> Value {
    let mut m = Map::new();
    for &(i, c) in x.terms() {
        m.insert(k.token(x.degree(), i).to_string(), json!(c));
    }
    Value::Object(m)
}

pub fn chain_from_value(k: &Complex, degree: usize, v: &Value) -> Result<Chain> {
    let mut terms = Vec::new();
    for (t, c) in object(v, "chain")? {
        let i = k
            .index(degree, t)
            .ok_or_else(|| parse_err(format!("{t} is not a generator of degree {degree}")))?;
        terms.push((i, int(c, t)?));
    }
    Ok(Chain::from_terms(degree, terms))
}

pub fn complex_to_value(k: &Complex) -> Value {
    let basis: Vec<Vec<String>> = (0..k.num_degrees()).map(|p| k.tokens(p).to_vec()).collect();
    let mut diff = Map::new();
    for p in 1..k.num_degrees() {
        for i in 0..k.rank(p) {
            diff.insert(k.token(p, i).to_string(), chain_to_value(k, k.boundary(p, i)));
        }
    }
    let mut aug = Map::new();
    for i in 0..k.rank(0) {
        aug.insert(k.token(0, i).to_string(), json!(k.augmentation(i)));
    }
    json!({ "basis": basis, "diff": diff, "aug": aug })
}

pub fn morphism_from_value(source: Arc<Complex>, target: Arc<Complex>, v: &Value) -> Result<AdcMorphism> {
    let images = object(v.get("images").unwrap_or(&Value::Null), "images")?;
    for tok in images.keys() {
        if source.locate(tok).is_none() {
            return Err(parse_err(format!("{tok} is not a generator of the source")));
        }
    }
    let mut err = None;
    let f = AdcMorphism::from_fn(source.clone(), target.clone(), |p, i| match images.get(source.token(p, i)) {
        Some(c) => chain_from_value(&target, p, c).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Chain::zero(p)
        }),
        None => Chain::zero(p),
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(f),
    }
}

pub fn morphism_to_value(f: &AdcMorphism) -> Value {
    let (s, t) = (f.source(), f.target());
    let mut images = Map::new();
    for p in 0..s.num_degrees() {
        for i in 0..s.rank(p) {
            let x = f.image(p, i);
            if !x.is_zero() {
                images.insert(s.token(p, i).to_string(), chain_to_value(t, x));
            }
        }
    }
    json!({ "images": images })
}

pub fn cell_to_value(k: &Complex, c: &Cell) -> Value {
    let rows: Vec<Value> = c
        .rows()
        .iter()
        .map(|[a, b]| Value::Array(vec![chain_to_value(k, a), chain_to_value(k, b)]))
        .collect();
    json!({ "dim": c.dim(), "rows": rows })
}

pub fn cell_from_value(k: &Complex, v: &Value) -> Result<Cell> {
    let rows = v.get("rows").and_then(|r| r.as_array()).ok_or_else(|| parse_err("cell without rows"))?;
    let mut out = Vec::new();
    for (p, r) in rows.iter().enumerate() {
        match r.as_array().map(|a| a.as_slice()) {
            Some([a, b]) => out.push([chain_from_value(k, p, a)?, chain_from_value(k, p, b)?]),
            _ => return Err(parse_err(format!("row {p} is not a pair of chains"))),
        }
    }
    if out.is_empty() {
        return Err(parse_err("cell without rows"));
    }
    Ok(Cell::from_rows(out))
}

/// Compact, stable rendering.
pub fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{c_delta_arc, c_of_map, MonotoneMap};

    #[test]
    fn complex_round_trip() {
        let k = c_delta_arc(3);
        let v = complex_to_value(&k);
        let back = complex_from_value(&v).unwrap();
        assert_eq!(to_string(&complex_to_value(&back)), to_string(&v));
        let e = complex_from_str(r#"{"basis": [["a"], ["x"]], "diff": {"x": {"b": 1}}}"#);
        assert!(matches!(e, Err(Error::Structural(_))));
    }

    #[test]
    fn morphism_round_trip() {
        let f = c_of_map(&MonotoneMap::new(1, 2, vec![0, 2]).unwrap());
        let v = morphism_to_value(&f);
        assert_eq!(to_string(&v), r#"{"images":{"(0)":{"(0)":1},"(1)":{"(2)":1},"(0,1)":{"(0,2)":1}}}"#);
        let g = morphism_from_value(f.source().clone(), f.target().clone(), &v).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn cell_round_trip() {
        let k = c_delta_arc(2);
        let a = crate::complex::atom_tableau(&k, 2, 0).cell;
        let back = cell_from_value(&k, &cell_to_value(&k, &a)).unwrap();
        assert_eq!(a, back);
    }
}
