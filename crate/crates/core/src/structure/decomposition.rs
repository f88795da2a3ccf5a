//! Elementary decompositions A = C₁ ⊕ ⋯ ⊕ C_p ⊕ J with canonical bases,
//! their construction from component models and their verification.

use serde_json::{json, Value};

use super::{is_star_graded_simple, jacobson_radical, nilpotency_degree, SimplicityVerdict};
use crate::algebra::{GradedStarAlgebra, Violation};
use crate::budget::Budget;
use crate::constructions::{ComponentKind, ComponentModel, MatrixUnit, Modelled};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{CompleteDegree, Sign};
use crate::json::{self as js, as_array, as_usize, field, parse_err};
use crate::linalg::{add_vec, is_zero_vec, scale_vec, sub_vec, zero_vec, Coordinates, Element, Subspace};

/// A canonical basis element of a component, tagged by its complete degree
/// and the matrix-unit index pair it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DElement {
    pub index_pair: (usize, usize),
    pub cd: CompleteDegree,
    pub vector: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    pub basis: Vec<DElement>,
    pub epsilon: Element,
    /// Matrix units of the component, needed by the witness builders.
    pub model: Option<ComponentModel>,
}

/// A radical basis element (ε_{l′} r ε_{l″} ± ε_{l″} r^* ε_{l′})/2.  Pair
/// entries are component indices; the value p stands for the complement
/// ε_{p+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement {
    pub pair: (usize, usize),
    pub cd: CompleteDegree,
    pub r: Element,
    pub vector: Element,
}

/// A claimed decomposition, as read from a file or built from a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionData {
    pub components: Vec<ComponentData>,
    pub radical: Vec<UElement>,
    pub nd: Option<usize>,
}

/// ε_l x, where l = p means the complement: x − Σ ε_i x.
fn eps_left(a: &GradedStarAlgebra, eps: &[Element], l: usize, x: &Element) -> Element {
    if l < eps.len() {
        return a.mul(&eps[l], x);
    }
    eps.iter().fold(x.clone(), |acc, e| sub_vec(&acc, &a.mul(e, x)))
}

fn eps_right(a: &GradedStarAlgebra, eps: &[Element], x: &Element, l: usize) -> Element {
    if l < eps.len() {
        return a.mul(x, &eps[l]);
    }
    eps.iter().fold(x.clone(), |acc, e| sub_vec(&acc, &a.mul(x, e)))
}

/// (ε_{l′} r ε_{l″} ± ε_{l″} r^* ε_{l′})/2
pub(crate) fn u_formula(
    a: &GradedStarAlgebra,
    eps: &[Element],
    pair: (usize, usize),
    sign: Sign,
    r: &Element,
) -> Element {
    let (l1, l2) = pair;
    let x = eps_left(a, eps, l1, &eps_right(a, eps, r, l2));
    let y = eps_left(a, eps, l2, &eps_right(a, eps, &a.star(r), l1));
    let half = CycloScalar::from_frac(a.conductor(), 1, 2);
    let s = match sign {
        Sign::Plus => add_vec(&x, &y),
        Sign::Minus => sub_vec(&x, &y),
    };
    scale_vec(&s, &half)
}

/// e^{(𝔢)}_{(ij)} of a model unit: the unit itself for the elementary type,
/// (E, E) for the exchange type.
pub(crate) fn symmetric_unit(u: &MatrixUnit) -> Element {
    match &u.right {
        Some(r) => add_vec(&u.left, r),
        None => u.left.clone(),
    }
}

/// Canonical decomposition read off a component model: idempotents
/// ε_l = λ⁻¹ Σ_i e_{ii}, the symmetric and skew parts of the matrix units
/// as D, and the radical basis U from the graded basis of the radical.
pub fn canonical_decomposition(built: &Modelled) -> Result<DecompositionData> {
    let a = &built.algebra;
    let (n, m) = (a.dim(), a.conductor());
    let e = a.group().identity();
    let mut components = Vec::new();
    for (l, c) in built.model.components.iter().enumerate() {
        let inv = c.lambda.embed(m)?.inv()?;
        let mut eps = zero_vec(n, m);
        for i in 0..c.k {
            let u = c
                .unit(i, i, &e)
                .ok_or_else(|| Error::DecompositionMismatch(format!("component {l} lacks the unit ({i},{i})")))?;
            eps = add_vec(&eps, &symmetric_unit(u));
        }
        let epsilon = scale_vec(&eps, &inv);
        let mut basis = Vec::new();
        let mut spans: Vec<(CompleteDegree, Subspace)> = Vec::new();
        for u in &c.units {
            let candidates: Vec<Element> = match (&c.kind, &u.right) {
                (ComponentKind::Exchange, Some(r)) => vec![add_vec(&u.left, r), sub_vec(&u.left, r)],
                (ComponentKind::Exchange, None) => {
                    return Err(Error::DecompositionMismatch(format!("exchange component {l} has a one-sided unit")))
                }
                (ComponentKind::Elementary, _) => Sign::both().map(|s| a.project_sign(&u.left, s)).to_vec(),
            };
            for v in candidates {
                if is_zero_vec(&v) {
                    continue;
                }
                let cd = a.complete_degree_of(&v).ok_or_else(|| {
                    Error::DecompositionMismatch(format!("unit ({},{}) of component {l} is not homogeneous", u.i, u.j))
                })?;
                let pos = match spans.iter().position(|(c, _)| c == &cd) {
                    Some(p) => p,
                    None => {
                        spans.push((cd.clone(), Subspace::zero(n, m)));
                        spans.len() - 1
                    }
                };
                if spans[pos].1.insert(&v) {
                    basis.push(DElement { index_pair: (u.i, u.j), cd, vector: v });
                }
            }
        }
        components.push(ComponentData { basis, epsilon, model: Some(c.clone()) });
    }

    let eps: Vec<Element> = components.iter().map(|c| c.epsilon.clone()).collect();
    let j = jacobson_radical(a);
    let p = eps.len();
    let mut span = Subspace::zero(n, m);
    let mut radical = Vec::new();
    for r in a.graded_basis(&j)? {
        for l1 in 0..=p {
            for l2 in l1..=p {
                for sign in Sign::both() {
                    let v = u_formula(a, &eps, (l1, l2), sign, &r);
                    if is_zero_vec(&v) || !span.insert(&v) {
                        continue;
                    }
                    let cd = a
                        .complete_degree_of(&v)
                        .ok_or_else(|| Error::DecompositionMismatch("radical element is not homogeneous".into()))?;
                    radical.push(UElement { pair: (l1, l2), cd, r: r.clone(), vector: v });
                }
            }
        }
    }
    if span != j {
        return Err(Error::DecompositionMismatch(format!(
            "the radical elements span dimension {} of {}",
            span.dim(),
            j.dim()
        )));
    }
    let nd = nilpotency_degree(a, &j)?;
    Ok(DecompositionData { components, radical, nd: Some(nd) })
}

fn model_to_json(c: &ComponentModel) -> Value {
    json!({
        "kind": c.kind.name(),
        "k": c.k,
        "subgroup": c.subgroup.iter().map(js::element_to_json).collect::<Vec<_>>(),
        "lambda": js::scalar_to_json(&c.lambda),
        "units": c.units.iter().map(|u| json!({
            "i": u.i,
            "j": u.j,
            "xi": js::element_to_json(&u.xi),
            "left": js::vector_to_json(&u.left),
            "right": u.right.as_ref().map(|r| js::vector_to_json(r)),
        })).collect::<Vec<_>>(),
    })
}

fn model_from_json(v: &Value, a: &GradedStarAlgebra) -> Result<ComponentModel> {
    let (g, n, m) = (a.group(), a.dim(), a.conductor());
    let kind = match field(v, "kind")?.as_str() {
        Some("elementary") => ComponentKind::Elementary,
        Some("exchange") => ComponentKind::Exchange,
        other => return Err(parse_err(format!("unknown component kind {other:?}"))),
    };
    let units = as_array(field(v, "units")?, "units")?
        .iter()
        .map(|u| {
            let right = match u.get("right") {
                None | Some(Value::Null) => None,
                Some(r) => Some(js::vector_from_json(r, n, m)?),
            };
            Ok(MatrixUnit {
                i: as_usize(field(u, "i")?, "i")?,
                j: as_usize(field(u, "j")?, "j")?,
                xi: js::element_from_json(field(u, "xi")?, g)?,
                left: js::vector_from_json(field(u, "left")?, n, m)?,
                right,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentModel {
        kind,
        k: as_usize(field(v, "k")?, "k")?,
        subgroup: as_array(field(v, "subgroup")?, "subgroup")?
            .iter()
            .map(|x| js::element_from_json(x, g))
            .collect::<Result<_>>()?,
        lambda: js::scalar_from_json(field(v, "lambda")?, m)?,
        units,
    })
}

fn pair_from_json(v: &Value, what: &str) -> Result<(usize, usize)> {
    match as_array(v, what)?.as_slice() {
        [x, y] => Ok((as_usize(x, what)?, as_usize(y, what)?)),
        _ => Err(parse_err(format!("{what}: expected two integers"))),
    }
}

fn cd_from_json(v: &Value, a: &GradedStarAlgebra) -> Result<CompleteDegree> {
    Ok(CompleteDegree::new(
        js::sign_from_json(field(v, "sign")?)?,
        js::element_from_json(field(v, "degree")?, a.group())?,
    ))
}

impl DecompositionData {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "format": js::FORMAT,
            "components": self.components.iter().map(|c| {
                let mut o = json!({
                    "basis_D": c.basis.iter().map(|d| json!({
                        "index_pair": [d.index_pair.0, d.index_pair.1],
                        "sign": js::sign_to_json(d.cd.sign),
                        "degree": js::element_to_json(&d.cd.degree),
                        "vector": js::vector_to_json(&d.vector),
                    })).collect::<Vec<_>>(),
                    "epsilon": js::vector_to_json(&c.epsilon),
                });
                if let Some(mo) = &c.model {
                    o["model"] = model_to_json(mo);
                }
                o
            }).collect::<Vec<_>>(),
            "radical_U": self.radical.iter().map(|u| json!({
                "pair": [u.pair.0, u.pair.1],
                "sign": js::sign_to_json(u.cd.sign),
                "degree": js::element_to_json(&u.cd.degree),
                "r": js::vector_to_json(&u.r),
                "vector": js::vector_to_json(&u.vector),
            })).collect::<Vec<_>>(),
        });
        if let Some(nd) = self.nd {
            out["nd"] = json!(nd);
        }
        out
    }

    /// Reads a decomposition of `a`.  A missing U "vector" is computed from
    /// its "r" by the defining formula.
    pub fn from_json(v: &Value, a: &GradedStarAlgebra) -> Result<Self> {
        js::check_format(v)?;
        let (n, m) = (a.dim(), a.conductor());
        let components = as_array(field(v, "components")?, "components")?
            .iter()
            .map(|c| {
                let basis = as_array(field(c, "basis_D")?, "basis_D")?
                    .iter()
                    .map(|d| {
                        Ok(DElement {
                            index_pair: pair_from_json(field(d, "index_pair")?, "index_pair")?,
                            cd: cd_from_json(d, a)?,
                            vector: js::vector_from_json(field(d, "vector")?, n, m)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let model = match c.get("model") {
                    None | Some(Value::Null) => None,
                    Some(mo) => Some(model_from_json(mo, a)?),
                };
                Ok(ComponentData { basis, epsilon: js::vector_from_json(field(c, "epsilon")?, n, m)?, model })
            })
            .collect::<Result<Vec<_>>>()?;
        let eps: Vec<Element> = components.iter().map(|c: &ComponentData| c.epsilon.clone()).collect();
        let radical = match v.get("radical_U") {
            None => Vec::new(),
            Some(list) => as_array(list, "radical_U")?
                .iter()
                .map(|u| {
                    let pair = pair_from_json(field(u, "pair")?, "pair")?;
                    if pair.0 > eps.len() || pair.1 > eps.len() {
                        return Err(parse_err(format!("pair {pair:?} names a missing component")));
                    }
                    let cd = cd_from_json(u, a)?;
                    let r = js::vector_from_json(field(u, "r")?, n, m)?;
                    let vector = match u.get("vector") {
                        None | Some(Value::Null) => u_formula(a, &eps, pair, cd.sign, &r),
                        Some(x) => js::vector_from_json(x, n, m)?,
                    };
                    Ok(UElement { pair, cd, r, vector })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let nd = match v.get("nd") {
            None | Some(Value::Null) => None,
            Some(x) => Some(as_usize(x, "nd")?),
        };
        Ok(DecompositionData { components, radical, nd })
    }
}

/// Where an elementary element comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryKind {
    D { component: usize, index: usize },
    U { pair: (usize, usize), index: usize },
}

/// An element of D ∪ U with its complete degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elementary {
    pub kind: ElementaryKind,
    pub cd: CompleteDegree,
    pub vector: Element,
}

impl Elementary {
    pub fn is_radical(&self) -> bool {
        matches!(self.kind, ElementaryKind::U { .. })
    }

    /// Components C_j (j < p) the element lies in or is bracketed by.
    pub fn touched(&self, p: usize) -> Vec<usize> {
        match self.kind {
            ElementaryKind::D { component, .. } => vec![component],
            ElementaryKind::U { pair: (l1, l2), .. } => {
                let mut out: Vec<usize> = [l1, l2].into_iter().filter(|&l| l < p).collect();
                out.dedup();
                out
            }
        }
    }
}

/// A decomposition that passed every check of [`verify_decomposition`].
#[derive(Clone, Debug)]
pub struct VerifiedDecomposition {
    algebra: GradedStarAlgebra,
    data: DecompositionData,
    radical: Subspace,
    nd: usize,
    /// Coordinates over D (component order) followed by U.
    coords: Coordinates,
}

impl VerifiedDecomposition {
    pub fn algebra(&self) -> &GradedStarAlgebra {
        &self.algebra
    }

    pub fn data(&self) -> &DecompositionData {
        &self.data
    }

    /// Number of simple components.
    pub fn p(&self) -> usize {
        self.data.components.len()
    }

    /// Dimension of the semisimple part.
    pub fn t(&self) -> usize {
        self.data.components.iter().map(|c| c.basis.len()).sum()
    }

    pub fn nd(&self) -> usize {
        self.nd
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn epsilon(&self, l: usize) -> &Element {
        &self.data.components[l].epsilon
    }

    pub fn model(&self, l: usize) -> Result<&ComponentModel> {
        self.data.components[l]
            .model
            .as_ref()
            .ok_or_else(|| Error::DecompositionMismatch(format!("component {l} carries no matrix-unit model")))
    }

    /// D followed by U, in stored order.
    pub fn elementary(&self) -> Vec<Elementary> {
        let mut out = Vec::new();
        for (l, c) in self.data.components.iter().enumerate() {
            for (i, d) in c.basis.iter().enumerate() {
                out.push(Elementary {
                    kind: ElementaryKind::D { component: l, index: i },
                    cd: d.cd.clone(),
                    vector: d.vector.clone(),
                });
            }
        }
        for (i, u) in self.data.radical.iter().enumerate() {
            out.push(Elementary { kind: ElementaryKind::U { pair: u.pair, index: i }, cd: u.cd.clone(), vector: u.vector.clone() });
        }
        out
    }

    pub fn elementary_of(&self, cd: &CompleteDegree) -> Vec<Elementary> {
        self.elementary().into_iter().filter(|e| &e.cd == cd).collect()
    }

    /// x = b + r with b in span D and r in J.
    pub fn split(&self, x: &[CycloScalar]) -> Result<(Element, Element)> {
        let a = &self.algebra;
        if x.len() != a.dim() {
            return Err(Error::DecompositionMismatch(format!("element of length {} for dimension {}", x.len(), a.dim())));
        }
        let c = self.coords.coords(x);
        let mut b = a.zero();
        for (k, e) in self.elementary().iter().enumerate().take(self.t()) {
            b = add_vec(&b, &scale_vec(&e.vector, &c[k]));
        }
        let r = sub_vec(x, &b);
        Ok((b, r))
    }

    /// Coordinates of the semisimple part over D.
    pub fn semisimple_coords(&self, x: &[CycloScalar]) -> Result<Element> {
        if x.len() != self.algebra.dim() {
            return Err(Error::DecompositionMismatch(format!(
                "element of length {} for dimension {}",
                x.len(),
                self.algebra.dim()
            )));
        }
        let mut c = self.coords.coords(x);
        c.truncate(self.t());
        Ok(c)
    }
}

/// Result of checking a claimed decomposition.
#[derive(Clone, Debug)]
pub struct DecompositionCheck {
    pub violations: Vec<Violation>,
    pub decomposition: Option<VerifiedDecomposition>,
}

impl DecompositionCheck {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every claim of an elementary decomposition: orthogonal neutral
/// symmetric idempotents, the Peirce conditions on D, the tags, the
/// formula for U, span U = J, D ∪ U a basis, span D a subalgebra with
/// zero radical, *-graded simplicity of every component and nd.
pub fn verify_decomposition(
    a: &GradedStarAlgebra,
    data: &DecompositionData,
    seed: u64,
    budget: &Budget,
) -> Result<DecompositionCheck> {
    let (n, m) = (a.dim(), a.conductor());
    let check_len = |v: &Element| if v.len() == n { Ok(()) } else { Err(Error::DimensionMismatch(n, v.len())) };
    for c in &data.components {
        check_len(&c.epsilon)?;
        for d in &c.basis {
            check_len(&d.vector)?;
        }
    }
    for u in &data.radical {
        check_len(&u.r)?;
        check_len(&u.vector)?;
    }

    let mut out = Vec::new();
    let p = data.components.len();
    let e = a.group().identity();
    let neutral = CompleteDegree::new(Sign::Plus, e.clone());
    let eps: Vec<Element> = data.components.iter().map(|c| c.epsilon.clone()).collect();

    for (l, x) in eps.iter().enumerate() {
        if is_zero_vec(x) || a.mul(x, x) != *x {
            out.push(Violation::new("idempotent", vec![l], format!("ε{} is not a nonzero idempotent", l + 1)));
        }
        if a.complete_degree_of(x).as_ref() != Some(&neutral) {
            out.push(Violation::new("homogeneous", vec![l], format!("ε{} is not of complete degree {neutral}", l + 1)));
        }
        for (k, y) in eps.iter().enumerate() {
            if k != l && !is_zero_vec(&a.mul(x, y)) {
                out.push(Violation::new("orthogonal", vec![l, k], format!("ε{}ε{} ≠ 0", l + 1, k + 1)));
            }
        }
    }

    for (l, c) in data.components.iter().enumerate() {
        for (i, d) in c.basis.iter().enumerate() {
            if a.mul(&a.mul(&c.epsilon, &d.vector), &c.epsilon) != d.vector {
                out.push(Violation::new("Peirce", vec![l, i], format!("ε{0} d ε{0} ≠ d for basis element {i}", l + 1)));
            }
            if a.complete_degree_of(&d.vector).as_ref() != Some(&d.cd) {
                out.push(Violation::new("tag", vec![l, i], format!("basis element {i} of component {} is not of complete degree {}", l + 1, d.cd)));
            }
        }
        if let Some(model) = &c.model {
            let span = Subspace::spanned_by(n, m, c.basis.iter().map(|d| &d.vector));
            let outside = model
                .units
                .iter()
                .position(|u| !span.contains(&u.left) || u.right.as_ref().is_some_and(|r| !span.contains(r)));
            if let Some(i) = outside {
                out.push(Violation::new("model", vec![l, i], format!("matrix unit {i} lies outside component {}", l + 1)));
            }
        }
    }

    let j = jacobson_radical(a);
    for (i, u) in data.radical.iter().enumerate() {
        if u.pair.0 > p || u.pair.1 > p {
            out.push(Violation::new("U-formula", vec![i], format!("pair {:?} names a missing component", u.pair)));
            continue;
        }
        if u_formula(a, &eps, u.pair, u.cd.sign, &u.r) != u.vector {
            out.push(Violation::new("U-formula", vec![i], format!("radical element {i} does not match its formula")));
        }
        if a.complete_degree_of(&u.vector).as_ref() != Some(&u.cd) {
            out.push(Violation::new("tag", vec![i], format!("radical element {i} is not of complete degree {}", u.cd)));
        }
        if !j.contains(&u.r) {
            out.push(Violation::new("radical", vec![i], format!("r of radical element {i} is not in the radical")));
        }
    }
    let u_span = Subspace::spanned_by(n, m, data.radical.iter().map(|u| &u.vector));
    if u_span != j {
        out.push(Violation::new("radical", vec![], format!("span U has dimension {}, the radical {}", u_span.dim(), j.dim())));
    }

    let all: Vec<Element> = data
        .components
        .iter()
        .flat_map(|c| c.basis.iter().map(|d| d.vector.clone()))
        .chain(data.radical.iter().map(|u| u.vector.clone()))
        .collect();
    let coords = if all.len() == n { Coordinates::new(&all, m) } else { None };
    if coords.is_none() {
        let rank = Subspace::spanned_by(n, m, &all).dim();
        out.push(Violation::new("spanning", vec![], format!("D ∪ U has {} elements of rank {rank}, dimension is {n}", all.len())));
    }

    let d_all: Vec<Element> = data.components.iter().flat_map(|c| c.basis.iter().map(|d| d.vector.clone())).collect();
    let d_span = Subspace::spanned_by(n, m, &d_all);
    if !a.is_subalgebra(&d_span) || d_span.rows().iter().any(|x| !d_span.contains(&a.star(x))) {
        out.push(Violation::new("subalgebra", vec![], "span D is not a star-closed subalgebra"));
    } else if d_span.dim() == d_all.len() && !d_all.is_empty() {
        if let Ok(b) = a.subalgebra(&d_all, None) {
            if !jacobson_radical(&b).is_zero() {
                out.push(Violation::new("radical", vec![], "span D has a nonzero radical"));
            }
        }
    }

    for (l, c) in data.components.iter().enumerate() {
        let basis: Vec<Element> = c.basis.iter().map(|d| d.vector.clone()).collect();
        if basis.is_empty() {
            out.push(Violation::new("simple", vec![l], format!("component {} is empty", l + 1)));
            continue;
        }
        match a.subalgebra(&basis, None) {
            Err(err) => out.push(Violation::new("subalgebra", vec![l], format!("component {}: {err}", l + 1))),
            Ok(sub) => match is_star_graded_simple(&sub, seed, budget)? {
                SimplicityVerdict::Simple { .. } => {}
                SimplicityVerdict::NotSimple { witness } => out.push(Violation::new(
                    "simple",
                    vec![l],
                    format!("component {} has a proper ideal of dimension {}", l + 1, witness.dim()),
                )),
                SimplicityVerdict::Inconclusive { burnside_dim } => out.push(Violation::new(
                    "simple",
                    vec![l],
                    format!("component {}: simplicity inconclusive (operator algebra of dimension {burnside_dim})", l + 1),
                )),
            },
        }
    }

    let nd = nilpotency_degree(a, &j)?;
    if let Some(claimed) = data.nd {
        if claimed != nd {
            out.push(Violation::new("nd", vec![], format!("claimed nilpotency degree {claimed}, computed {nd}")));
        }
    }

    let decomposition = match (out.is_empty(), coords) {
        (true, Some(coords)) => Some(VerifiedDecomposition { algebra: a.clone(), data: data.clone(), radical: j, nd, coords }),
        _ => None,
    };
    Ok(DecompositionCheck { violations: out, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matrix_twisted_with_model, tensor_truncated_polynomial, upper_triangular, InvolutionChoice};
    use crate::groupkit::{FiniteAbelianGroup, TwoCocycle};

    fn ut2_by_hand() -> (GradedStarAlgebra, DecompositionData) {
        let a = upper_triangular(2).unwrap().algebra;
        let g = a.group().clone();
        let e11 = a.basis_vector(0);
        let e22 = a.basis_vector(2);
        let eps = add_vec(&e11, &e22);
        let d = vec![
            DElement { index_pair: (0, 0), cd: CompleteDegree::new(Sign::Plus, g.identity()), vector: eps.clone() },
            DElement { index_pair: (0, 0), cd: CompleteDegree::new(Sign::Minus, g.identity()), vector: sub_vec(&e11, &e22) },
        ];
        let r = a.basis_vector(1);
        let u = UElement {
            pair: (0, 0),
            cd: CompleteDegree::new(Sign::Plus, g.reduce(&[1])),
            r: r.clone(),
            vector: r,
        };
        let data = DecompositionData {
            components: vec![ComponentData { basis: d, epsilon: eps, model: None }],
            radical: vec![u],
            nd: Some(2),
        };
        (a, data)
    }

    #[test]
    fn ut2_hand_decomposition_is_ok() {
        let (a, data) = ut2_by_hand();
        let check = verify_decomposition(&a, &data, 0, &Budget::default()).unwrap();
        assert!(check.is_ok(), "{:?}", check.violations);
        let dec = check.decomposition.unwrap();
        assert_eq!((dec.p(), dec.t(), dec.nd()), (1, 2, 2));
    }

    #[test]
    fn broken_claims_are_reported() {
        let (a, mut data) = ut2_by_hand();
        data.components[0].epsilon = a.basis_vector(1);
        let check = verify_decomposition(&a, &data, 0, &Budget::default()).unwrap();
        assert!(check.violations.iter().any(|v| v.axiom == "idempotent"));

        // E₁₁ claimed in the component of E₂₂ in UT₃.
        let built = upper_triangular(3).unwrap();
        let a = built.algebra.clone();
        let mut data = canonical_decomposition(&built).unwrap();
        data.components[1].basis[0].vector = a.basis_vector(0);
        let check = verify_decomposition(&a, &data, 0, &Budget::default()).unwrap();
        assert!(check.violations.iter().any(|v| v.axiom == "Peirce"));
    }

    #[test]
    fn canonical_decompositions_verify() {
        let g = FiniteAbelianGroup::cyclic(2);
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        let m2 = matrix_twisted_with_model(2, &g, &z, &[g.reduce(&[0]), g.reduce(&[1])], &InvolutionChoice::TransposeFamily(1)).unwrap();
        let mut cases = vec![upper_triangular(2).unwrap(), upper_triangular(3).unwrap(), m2.clone()];
        for s in Sign::both() {
            cases.push(tensor_truncated_polynomial(&m2, 2, s).unwrap());
        }
        for built in cases {
            let data = canonical_decomposition(&built).unwrap();
            let check = verify_decomposition(&built.algebra, &data, 0, &Budget::default()).unwrap();
            assert!(check.is_ok(), "{:?}: {:?}", built.algebra.family(), check.violations);
            let back = DecompositionData::from_json(&data.to_json(), &built.algebra).unwrap();
            assert_eq!(back, data);
        }
    }
}
