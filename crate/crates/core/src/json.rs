//! JSON encoding helpers shared by every document type.
//!
//! Scalars are lists of "p/q" strings in the power basis 1, ζ, ζ², …; a
//! bare string or integer is read as a rational.  Every top-level document
//! carries `"format": 1`.

use serde_json::{json, Value};

use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{CompleteDegree, FiniteAbelianGroup, GroupElement, Sign, TwoCocycle};
use crate::linalg::{Element, SparseVec};

pub const FORMAT: u64 = 1;

pub fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field '{key}'")))
}

pub fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

pub fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what}: expected a nonnegative integer")))
}

pub fn as_u32(v: &Value, what: &str) -> Result<u32> {
    let x = as_usize(v, what)?;
    u32::try_from(x).map_err(|_| parse_err(format!("{what}: integer too large")))
}

/// Rejects documents declaring a format other than 1.  A missing field is
/// accepted.
pub fn check_format(v: &Value) -> Result<()> {
    match v.get("format") {
        None => Ok(()),
        Some(f) if f.as_u64() == Some(FORMAT) => Ok(()),
        Some(f) => Err(parse_err(format!("unsupported format {f}"))),
    }
}

pub fn scalar_to_json(s: &CycloScalar) -> Value {
    Value::from(s.to_strings())
}

pub fn scalar_from_json(v: &Value, m: u32) -> Result<CycloScalar> {
    let items: Vec<String> = match v {
        Value::String(s) => vec![s.clone()],
        Value::Number(n) => vec![n.to_string()],
        Value::Array(xs) => xs
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(parse_err("scalar coefficient must be a string or integer")),
            })
            .collect::<Result<_>>()?,
        _ => return Err(parse_err("scalar must be a list of \"p/q\" strings")),
    };
    if items.is_empty() {
        return Ok(CycloScalar::zero(m));
    }
    CycloScalar::from_strings(m, &items).map_err(|e| parse_err(e.to_string()))
}

pub fn vector_to_json(v: &[CycloScalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(v: &Value, n: usize, m: u32) -> Result<Element> {
    let xs = as_array(v, "vector")?;
    if xs.len() != n {
        return Err(Error::DimensionMismatch(n, xs.len()));
    }
    xs.iter().map(|x| scalar_from_json(x, m)).collect()
}

pub fn sparse_to_json(v: &SparseVec) -> Value {
    Value::Array(v.iter().map(|(k, s)| json!([k, scalar_to_json(s)])).collect())
}

/// Reads `[[k, scalar], …]`, summing repeated indices and dropping zeros.
pub fn sparse_from_json(v: &Value, n: usize, m: u32) -> Result<SparseVec> {
    let mut acc = std::collections::BTreeMap::<usize, CycloScalar>::new();
    for item in as_array(v, "sparse vector")? {
        let pair = as_array(item, "sparse entry")?;
        if pair.len() != 2 {
            return Err(parse_err("sparse entry must be [index, scalar]"));
        }
        let k = as_usize(&pair[0], "sparse index")?;
        if k >= n {
            return Err(parse_err(format!("index {k} out of range for dimension {n}")));
        }
        let s = scalar_from_json(&pair[1], m)?;
        let e = acc.entry(k).or_insert_with(|| CycloScalar::zero(m));
        *e += &s;
    }
    Ok(acc.into_iter().filter(|(_, s)| !s.is_zero()).collect())
}

pub fn group_to_json(g: &FiniteAbelianGroup) -> Value {
    json!({ "orders": g.orders() })
}

pub fn group_from_json(v: &Value) -> Result<FiniteAbelianGroup> {
    let orders = as_array(field(v, "orders")?, "orders")?
        .iter()
        .map(|x| as_u32(x, "order"))
        .collect::<Result<Vec<_>>>()?;
    FiniteAbelianGroup::new(orders)
}

pub fn element_to_json(e: &GroupElement) -> Value {
    Value::from(e.0.clone())
}

/// Reads an integer array (or a bare integer for a cyclic group), reducing
/// modulo the orders.
pub fn element_from_json(v: &Value, g: &FiniteAbelianGroup) -> Result<GroupElement> {
    let comps: Vec<i64> = match v {
        Value::Number(_) => vec![v.as_i64().ok_or_else(|| parse_err("group element component"))?],
        _ => as_array(v, "group element")?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| parse_err("group element component")))
            .collect::<Result<_>>()?,
    };
    if comps.len() != g.orders().len() {
        return Err(parse_err(format!(
            "group element {comps:?} has {} components, group has {}",
            comps.len(),
            g.orders().len()
        )));
    }
    Ok(g.reduce(&comps))
}

pub fn sign_from_json(v: &Value) -> Result<Sign> {
    match v.as_str() {
        Some("+") | Some("plus") => Ok(Sign::Plus),
        Some("-") | Some("minus") => Ok(Sign::Minus),
        _ => Err(parse_err(format!("sign must be \"+\" or \"-\", got {v}"))),
    }
}

pub fn sign_to_json(s: Sign) -> Value {
    Value::from(s.symbol())
}

pub fn complete_degree_to_json(c: &CompleteDegree) -> Value {
    json!({ "sign": c.sign.symbol(), "degree": element_to_json(&c.degree) })
}

pub fn cocycle_to_json(z: &TwoCocycle) -> Value {
    json!({
        "subgroup": z.subgroup.iter().map(element_to_json).collect::<Vec<_>>(),
        "table": z.table.iter().map(|((a, b), s)| json!([element_to_json(a), element_to_json(b), scalar_to_json(s)])).collect::<Vec<_>>(),
    })
}

pub fn cocycle_from_json(v: &Value, g: &FiniteAbelianGroup, m: u32) -> Result<TwoCocycle> {
    let subgroup = as_array(field(v, "subgroup")?, "subgroup")?
        .iter()
        .map(|x| element_from_json(x, g))
        .collect::<Result<Vec<_>>>()?;
    let mut table = std::collections::BTreeMap::new();
    for row in as_array(field(v, "table")?, "table")? {
        let r = as_array(row, "table row")?;
        if r.len() != 3 {
            return Err(parse_err("cocycle row must be [h1, h2, scalar]"));
        }
        table.insert(
            (element_from_json(&r[0], g)?, element_from_json(&r[1], g)?),
            scalar_from_json(&r[2], m)?,
        );
    }
    Ok(TwoCocycle { subgroup, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_forms() {
        let m = 4;
        let s = scalar_from_json(&json!(["1/2", "-3"]), m).unwrap();
        assert_eq!(scalar_to_json(&s), json!(["1/2", "-3/1"]));
        assert_eq!(scalar_from_json(&json!("2"), m).unwrap(), CycloScalar::from_int(m, 2));
        assert_eq!(scalar_from_json(&json!(5), m).unwrap(), CycloScalar::from_int(m, 5));
        assert!(scalar_from_json(&json!({}), m).is_err());
    }

    #[test]
    fn sparse_merges_duplicates() {
        let v = sparse_from_json(&json!([[1, "1"], [1, "-1"], [0, "2"]]), 2, 1).unwrap();
        assert_eq!(v, vec![(0, CycloScalar::from_int(1, 2))]);
        assert!(sparse_from_json(&json!([[3, "1"]]), 2, 1).is_err());
    }
}
