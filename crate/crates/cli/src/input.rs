//! Reading documents and flag values.

use std::path::Path;

use gsa_core::identities::{AlternatedPolynomial, MultilinearPolynomial};
use gsa_core::json::{as_array, as_usize};
use gsa_core::structure::{verify_decomposition, DecompositionData, VerifiedDecomposition};
use gsa_core::{Budget, Error, FiniteAbelianGroup, GradedStarAlgebra, GroupElement, Result, Violation};
use serde_json::Value;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// The `key` part of a document.  Reports written by this tool carry their
/// documents under "payload", so their output can be fed back in directly.
pub fn section<'a>(doc: &'a Value, key: &str) -> &'a Value {
    match doc.get("payload") {
        Some(p) => p.get(key).unwrap_or(p),
        None => doc,
    }
}

pub fn load_algebra(path: &Path) -> Result<GradedStarAlgebra> {
    GradedStarAlgebra::from_json(section(&read_json(path)?, "algebra"))
}

/// A checked decomposition, or the violations found while checking it.
pub fn load_decomposition(
    a: &GradedStarAlgebra,
    path: &Path,
    seed: u64,
    budget: &Budget,
) -> Result<std::result::Result<VerifiedDecomposition, Vec<Violation>>> {
    let data = DecompositionData::from_json(section(&read_json(path)?, "decomposition"), a)?;
    let check = verify_decomposition(a, &data, seed, budget)?;
    Ok(match check.decomposition {
        Some(d) if check.violations.is_empty() => Ok(d),
        _ => Err(check.violations),
    })
}

/// A plain multilinear polynomial; an "alternate" field is expanded.
pub fn polynomial_from_value(v: &Value, a: &GradedStarAlgebra, budget: &Budget) -> Result<MultilinearPolynomial> {
    let mut plain = v.clone();
    let mut sets = Vec::new();
    if let Some(o) = plain.as_object_mut() {
        o.remove("normal");
        if let Some(s) = o.remove("alternate") {
            for set in as_array(&s, "alternate")? {
                sets.push(as_array(set, "alternate")?.iter().map(|x| as_usize(x, "alternate")).collect::<Result<Vec<_>>>()?);
            }
        }
    }
    let base = MultilinearPolynomial::from_json(&plain, a.group(), a.conductor())?;
    if sets.is_empty() {
        Ok(base)
    } else {
        AlternatedPolynomial::new(base, sets)?.expand(budget)
    }
}

pub fn load_polynomial(path: &Path, a: &GradedStarAlgebra, budget: &Budget) -> Result<MultilinearPolynomial> {
    polynomial_from_value(section(&read_json(path)?, "polynomial"), a, budget)
}

/// A single polynomial document, an array of them, or {"polynomials": [...]}.
pub fn load_polynomials(path: &Path, a: &GradedStarAlgebra, budget: &Budget) -> Result<Vec<MultilinearPolynomial>> {
    let doc = read_json(path)?;
    let list = match &doc {
        Value::Array(v) => v.clone(),
        _ => match doc.get("polynomials") {
            Some(p) => as_array(p, "polynomials")?.clone(),
            None => vec![section(&doc, "polynomial").clone()],
        },
    };
    list.iter().map(|v| polynomial_from_value(v, a, budget)).collect()
}

/// Integers separated by ',' or ';', grouped into elements of `g`.
pub fn parse_elements(spec: &str, g: &FiniteAbelianGroup) -> Result<Vec<GroupElement>> {
    let r = g.orders().len();
    let ints = spec
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if r == 0 || ints.len() % r != 0 {
        return Err(Error::Parse(format!("{spec:?} does not split into elements with {r} components")));
    }
    Ok(ints.chunks(r).map(|c| g.reduce(c)).collect())
}
