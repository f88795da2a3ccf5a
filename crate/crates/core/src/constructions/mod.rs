//! Builders for concrete graded algebras with involution.
//!
//! Builders that produce semisimple pieces also return a [`AlgebraModel`]:
//! the matrix units of every simple component as vectors of the built
//! algebra.  Canonical decompositions are read off these models.

mod classification;
mod free_radical;
mod phi;
mod test_algebras;

use std::collections::BTreeMap;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::algebra::{GradedStarAlgebra, TableBuilder};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{verify_cocycle, CocycleCheck, FiniteAbelianGroup, GroupElement, TwoCocycle};
use crate::json::{self as js, as_array, as_usize, parse_err};
use crate::linalg::{unit_vec, zero_vec, Element, SparseVec};

pub use classification::{enumerate_classification, family5_involution, ClassifiedAlgebra};
pub use free_radical::{free_radical_word_count, free_radical_words, truncated_free_radical, FreeRadicalWord, Letter};
pub use phi::{phi_functor, SuperAlgebra};
pub use test_algebras::{tensor_truncated_polynomial, upper_triangular};

/// Type 1: a graded simple algebra with an elementary involution.
/// Type 2: B × B^op with the exchange involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Elementary,
    Exchange,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::Elementary => "elementary",
            ComponentKind::Exchange => "exchange",
        }
    }
}

/// The matrix unit E_ij η_ξ of a component.  For the exchange type `left`
/// is (E_ij η_ξ, 0) and `right` is (0, E_ij η_ξ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixUnit {
    pub i: usize,
    pub j: usize,
    pub xi: GroupElement,
    pub left: Element,
    pub right: Option<Element>,
}

/// A simple component M_k(F^ζ[H]) or its exchange double inside an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentModel {
    pub kind: ComponentKind,
    pub k: usize,
    pub subgroup: Vec<GroupElement>,
    /// ζ(𝔢, 𝔢)
    pub lambda: CycloScalar,
    pub units: Vec<MatrixUnit>,
}

impl ComponentModel {
    pub fn unit(&self, i: usize, j: usize, xi: &GroupElement) -> Option<&MatrixUnit> {
        self.units.iter().find(|u| u.i == i && u.j == j && &u.xi == xi)
    }

    /// Same component inside a larger space, at coordinate offset `offset`.
    pub fn shifted(&self, offset: usize, n: usize) -> ComponentModel {
        let m = self.lambda.conductor();
        let shift = |v: &Element| -> Element {
            let mut out = zero_vec(n, m);
            for (t, x) in v.iter().enumerate() {
                out[offset + t] = x.clone();
            }
            out
        };
        ComponentModel {
            units: self
                .units
                .iter()
                .map(|u| MatrixUnit {
                    i: u.i,
                    j: u.j,
                    xi: u.xi.clone(),
                    left: shift(&u.left),
                    right: u.right.as_ref().map(&shift),
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Applies a coordinate map to every stored vector.
    pub fn mapped(&self, f: &dyn Fn(&Element) -> Element) -> ComponentModel {
        ComponentModel {
            units: self
                .units
                .iter()
                .map(|u| MatrixUnit {
                    i: u.i,
                    j: u.j,
                    xi: u.xi.clone(),
                    left: f(&u.left),
                    right: u.right.as_ref().map(f),
                })
                .collect(),
            ..self.clone()
        }
    }
}

/// Simple components of the semisimple part of a built algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraModel {
    pub components: Vec<ComponentModel>,
}

/// A built algebra together with its component model.
#[derive(Clone, Debug)]
pub struct Modelled {
    pub algebra: GradedStarAlgebra,
    pub model: AlgebraModel,
}

/// Explicit elementary involution: (i, j, ξ) ↦ c·E_{i′j′} η_{ξ′}, indices
/// 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementaryInvolutionSpec {
    pub entries: BTreeMap<(usize, usize, GroupElement), (CycloScalar, usize, usize, GroupElement)>,
}

impl ElementaryInvolutionSpec {
    /// E_ij η_ξ ↦ E_{k−1−j, k−1−i} η_ξ (0-based), reflection in the
    /// anti-diagonal.
    pub fn reflection(k: usize, subgroup: &[GroupElement], m: u32) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..k {
            for j in 0..k {
                for xi in subgroup {
                    entries.insert((i, j, xi.clone()), (CycloScalar::one(m), k - 1 - j, k - 1 - i, xi.clone()));
                }
            }
        }
        ElementaryInvolutionSpec { entries }
    }

    pub fn transpose(k: usize, subgroup: &[GroupElement], m: u32) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..k {
            for j in 0..k {
                for xi in subgroup {
                    entries.insert((i, j, xi.clone()), (CycloScalar::one(m), j, i, xi.clone()));
                }
            }
        }
        ElementaryInvolutionSpec { entries }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|((i, j, x), (c, i2, j2, x2))| {
                    json!([i, j, js::element_to_json(x), js::scalar_to_json(c), i2, j2, js::element_to_json(x2)])
                })
                .collect(),
        )
    }

    /// Reads `[[i, j, ξ, sign, i′, j′, ξ′], …]`.
    pub fn from_json(v: &Value, g: &FiniteAbelianGroup, m: u32) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for row in as_array(v, "involution spec")? {
            let r = as_array(row, "involution entry")?;
            if r.len() != 7 {
                return Err(parse_err("involution entry must be [i, j, xi, sign, i', j', xi']"));
            }
            entries.insert(
                (as_usize(&r[0], "i")?, as_usize(&r[1], "j")?, js::element_from_json(&r[2], g)?),
                (
                    js::scalar_from_json(&r[3], m)?,
                    as_usize(&r[4], "i'")?,
                    as_usize(&r[5], "j'")?,
                    js::element_from_json(&r[6], g)?,
                ),
            );
        }
        Ok(ElementaryInvolutionSpec { entries })
    }
}

/// Involution on M_k(F^ζ[H]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionChoice {
    /// No involution; the identity map is stored as a placeholder.  Useful
    /// only as input to [`exchange_double`].
    None,
    Elementary(ElementaryInvolutionSpec),
    /// (X_θ η_θ)^* = α^{s(θ)} X_θ^t η_θ
    TransposeFamily(i64),
    /// (X_θ η_θ)^* = α^{s(θ)} J X_θ^t J^{-1} η_θ, J = [[0, I], [−I, 0]]
    SymplecticFamily(i64),
}

/// Image of E_ij under X ↦ J X^t J^{-1}, as (sign, s, t).
pub fn symplectic_image(k: usize, i: usize, j: usize) -> (i64, usize, usize) {
    let h = k / 2;
    // J e_a: column a of J.  J = Σ_{a<h} E_{a,a+h} − E_{a+h,a}.
    let j_col = |a: usize| -> (i64, usize) { if a < h { (-1, a + h) } else { (1, a - h) } };
    // J E_ji J^{-1} = −J E_ji J = −(J e_j)(e_i^t J).  Row i of J:
    let j_row = |a: usize| -> (i64, usize) { if a < h { (1, a + h) } else { (-1, a - h) } };
    let (s1, s) = j_col(j);
    let (s2, t) = j_row(i);
    (-s1 * s2, s, t)
}

fn is_alpha(alpha: i64) -> Result<()> {
    if alpha == 1 || alpha == -1 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("alpha must be ±1, got {alpha}")))
    }
}

/// s(θ) = m mod 2 for θ = m·ξ with ξ the first generator of the cyclic
/// subgroup H.
fn twist_exponents(g: &FiniteAbelianGroup, h: &[GroupElement]) -> Result<BTreeMap<GroupElement, i64>> {
    let order = h.len();
    let gen = h
        .iter()
        .find(|x| g.element_order(x) as usize == order)
        .ok_or_else(|| Error::InvalidSpec("alpha = -1 needs a cyclic subgroup".into()))?;
    let mut out = BTreeMap::new();
    for m in 0..order {
        out.insert(g.times(m as i64, gen), (m % 2) as i64);
    }
    Ok(out)
}

pub(crate) fn unit_label(i: usize, j: usize, xi: &GroupElement, trivial_h: bool, k: usize) -> String {
    let e = if k < 10 { format!("E{}{}", i + 1, j + 1) } else { format!("E{},{}", i + 1, j + 1) };
    if trivial_h {
        e
    } else {
        format!("{e}η{xi}")
    }
}

/// M_k(F^ζ[H]) with the elementary grading deg E_ij η_ξ = −θ_i + ξ + θ_j,
/// H being the subgroup of the cocycle.
pub fn matrix_twisted(
    k: usize,
    g: &FiniteAbelianGroup,
    z: &TwoCocycle,
    tuple: &[GroupElement],
    inv: &InvolutionChoice,
) -> Result<GradedStarAlgebra> {
    matrix_twisted_with_model(k, g, z, tuple, inv).map(|b| b.algebra)
}

pub fn matrix_twisted_with_model(
    k: usize,
    g: &FiniteAbelianGroup,
    z: &TwoCocycle,
    tuple: &[GroupElement],
    inv: &InvolutionChoice,
) -> Result<Modelled> {
    if k == 0 {
        return Err(Error::InvalidSpec("matrix size must be positive".into()));
    }
    if tuple.len() != k {
        return Err(Error::InvalidSpec(format!("tuple has {} entries, expected {k}", tuple.len())));
    }
    if let Some(t) = tuple.iter().find(|t| !g.contains(t)) {
        return Err(Error::InvalidSpec(format!("tuple entry {t} is not a group element")));
    }
    match verify_cocycle(g, z)? {
        CocycleCheck::Valid => {}
        CocycleCheck::Invalid(a, b, c) => {
            return Err(Error::InvalidCocycle(format!("cocycle identity fails at ({a}, {b}, {c})")))
        }
        CocycleCheck::ZeroValue(a, b) => return Err(Error::InvalidCocycle(format!("zero value at ({a}, {b})"))),
    }
    let m = g.conductor().lcm(&z.conductor().unwrap_or(1));
    let mut hs = z.subgroup.clone();
    hs.sort();
    hs.dedup();
    let nh = hs.len();
    let hpos = |x: &GroupElement| hs.iter().position(|y| y == x);
    let zeta = |a: &GroupElement, b: &GroupElement| -> Result<CycloScalar> { Ok(z.get(a, b)?.embed(m)?) };
    let idx = |i: usize, j: usize, h: usize| (i * k + j) * nh + h;
    let n = k * k * nh;

    let mut labels = Vec::with_capacity(n);
    let mut grading = Vec::with_capacity(n);
    for i in 0..k {
        for j in 0..k {
            for xi in &hs {
                labels.push(unit_label(i, j, xi, nh == 1, k));
                grading.push(g.add(&g.sub(xi, &tuple[i]), &tuple[j]));
            }
        }
    }

    // η_a η_b = ζ(a,b) η_{a+b}
    let mut zt = vec![vec![(0usize, CycloScalar::zero(m)); nh]; nh];
    for (a, xa) in hs.iter().enumerate() {
        for (b, xb) in hs.iter().enumerate() {
            let c = hpos(&g.add(xa, xb)).ok_or_else(|| Error::InvalidCocycle("subgroup not closed".into()))?;
            zt[a][b] = (c, zeta(xa, xb)?);
        }
    }

    let e = g.identity();
    let e_pos = hpos(&e).ok_or_else(|| Error::InvalidCocycle("subgroup lacks the identity".into()))?;
    let lambda = zeta(&e, &e)?;

    let star: Vec<SparseVec> = match inv {
        InvolutionChoice::None => (0..n).map(|p| vec![(p, CycloScalar::one(m))]).collect(),
        InvolutionChoice::Elementary(spec) => {
            let mut out = vec![SparseVec::new(); n];
            for i in 0..k {
                for j in 0..k {
                    for (h, xi) in hs.iter().enumerate() {
                        let (c, i2, j2, x2) = spec.entries.get(&(i, j, xi.clone())).ok_or_else(|| {
                            Error::InvalidSpec(format!("no image given for E{}{}η{xi}", i + 1, j + 1))
                        })?;
                        if *i2 >= k || *j2 >= k {
                            return Err(Error::InvalidSpec(format!("image index ({i2},{j2}) out of range")));
                        }
                        let h2 = hpos(x2)
                            .ok_or_else(|| Error::InvalidSpec(format!("image ξ′ = {x2} is not in the subgroup")))?;
                        if (i, j) == (*i2, *j2) && h != h2 {
                            return Err(Error::InvalidSpec(format!(
                                "E{}{} is fixed but ξ = {xi} moves to {x2}",
                                i + 1,
                                j + 1
                            )));
                        }
                        let d1 = &grading[idx(i, j, h)];
                        let d2 = &grading[idx(*i2, *j2, h2)];
                        if d1 != d2 {
                            return Err(Error::InvalidSpec(format!(
                                "E{}{}η{xi} of degree {d1} maps to degree {d2}",
                                i + 1,
                                j + 1
                            )));
                        }
                        let c = c.embed(m)?;
                        if c.is_zero() {
                            return Err(Error::InvalidSpec("zero coefficient in involution".into()));
                        }
                        out[idx(i, j, h)] = vec![(idx(*i2, *j2, h2), c)];
                    }
                }
            }
            out
        }
        InvolutionChoice::TransposeFamily(alpha) | InvolutionChoice::SymplecticFamily(alpha) => {
            is_alpha(*alpha)?;
            let symplectic = matches!(inv, InvolutionChoice::SymplecticFamily(_));
            if symplectic && k % 2 == 1 {
                return Err(Error::InvalidSpec("symplectic involution needs even k".into()));
            }
            let twist = if *alpha == -1 { Some(twist_exponents(g, &hs)?) } else { None };
            let mut out = vec![SparseVec::new(); n];
            for i in 0..k {
                for j in 0..k {
                    for (h, xi) in hs.iter().enumerate() {
                        let (sign, s, t) = if symplectic { symplectic_image(k, i, j) } else { (1, j, i) };
                        let tw = twist.as_ref().map_or(0, |tw| tw[xi]);
                        let c = if (tw % 2 == 1) ^ (sign == -1) { -1 } else { 1 };
                        out[idx(i, j, h)] = vec![(idx(s, t, h), CycloScalar::from_int(m, c))];
                    }
                }
            }
            out
        }
    };

    let mut unit = zero_vec(n, m);
    let inv_lambda = lambda.inv()?;
    for i in 0..k {
        unit[idx(i, i, e_pos)] = inv_lambda.clone();
    }

    let builder = TableBuilder { group: g.clone(), conductor: m, labels, grading };
    let algebra = builder.build(
        |p, q| {
            let (ij, a) = (p / nh, p % nh);
            let (kl, b) = (q / nh, q % nh);
            let (i, j) = (ij / k, ij % k);
            let (k2, l) = (kl / k, kl % k);
            if j != k2 {
                return vec![];
            }
            let (c, coef) = &zt[a][b];
            vec![(idx(i, l, *c), coef.clone())]
        },
        |p| star[p].clone(),
        Some(unit),
    )?;

    let violations: Vec<_> = algebra
        .verify_axioms()
        .into_iter()
        .filter(|v| !matches!(inv, InvolutionChoice::None) || !v.axiom.starts_with("star"))
        .collect();
    if !violations.is_empty() {
        let what: Vec<String> = violations.iter().map(|v| format!("{}: {}", v.axiom, v.detail)).collect();
        return Err(Error::InvalidSpec(what.join("; ")));
    }

    let units = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .flat_map(|(i, j)| hs.iter().enumerate().map(move |(h, xi)| (i, j, h, xi.clone())))
        .map(|(i, j, h, xi)| MatrixUnit { i, j, xi, left: unit_vec(n, idx(i, j, h), m), right: None })
        .collect();
    let model = AlgebraModel {
        components: vec![ComponentModel {
            kind: ComponentKind::Elementary,
            k,
            subgroup: hs.clone(),
            lambda,
            units,
        }],
    };
    Ok(Modelled { algebra, model })
}

/// B × B^op with the exchange involution (a, b)^* = (b, a).  Any involution
/// of B is ignored.
pub fn exchange_double(b: &GradedStarAlgebra) -> Result<GradedStarAlgebra> {
    let n = b.dim();
    let m = b.conductor();
    let shift = |v: &SparseVec, off: usize| -> SparseVec { v.iter().map(|(k, c)| (k + off, c.clone())).collect() };
    let labels = (0..n)
        .map(|i| format!("({},0)", b.label(i)))
        .chain((0..n).map(|i| format!("(0,{})", b.label(i))))
        .collect();
    let grading = b.grading().iter().chain(b.grading()).cloned().collect();
    let unit = b.unit().map(|u| u.iter().chain(u).cloned().collect());
    let builder = TableBuilder { group: b.group().clone(), conductor: m, labels, grading };
    let mut out = builder.build(
        |p, q| match (p < n, q < n) {
            (true, true) => b.product_of_basis(p, q).clone(),
            // B^op: (0,x)(0,y) = (0, y x)
            (false, false) => shift(b.product_of_basis(q - n, p - n), n),
            _ => vec![],
        },
        |p| if p < n { vec![(p + n, CycloScalar::one(m))] } else { vec![(p - n, CycloScalar::one(m))] },
        unit,
    )?;
    if let Some(f) = b.family() {
        out = out.with_family(format!("exchange({f})"));
    }
    Ok(out)
}

/// Exchange double of a single-component model; the result is one
/// exchange-type component.
pub fn exchange_double_with_model(b: &Modelled) -> Result<Modelled> {
    let algebra = exchange_double(&b.algebra)?;
    let n = b.algebra.dim();
    let comp = match b.model.components.as_slice() {
        [c] if c.kind == ComponentKind::Elementary => c,
        _ => return Err(Error::Invalid("exchange double model needs one elementary component".into())),
    };
    let m = algebra.conductor();
    let widen = |v: &Element, off: usize| -> Element {
        let mut out = zero_vec(2 * n, m);
        for (t, x) in v.iter().enumerate() {
            out[off + t] = x.clone();
        }
        out
    };
    let units = comp
        .units
        .iter()
        .map(|u| MatrixUnit {
            i: u.i,
            j: u.j,
            xi: u.xi.clone(),
            left: widen(&u.left, 0),
            right: Some(widen(&u.left, n)),
        })
        .collect();
    let model = AlgebraModel {
        components: vec![ComponentModel { kind: ComponentKind::Exchange, units, ..comp.clone() }],
    };
    Ok(Modelled { algebra, model })
}

/// Componentwise direct product.
pub fn direct_product(parts: &[GradedStarAlgebra]) -> Result<GradedStarAlgebra> {
    let first = parts.first().ok_or_else(|| Error::Invalid("empty direct product".into()))?;
    let (g, m) = (first.group().clone(), first.conductor());
    for p in parts {
        if p.group() != &g {
            return Err(Error::GroupMismatch(format!("groups {:?} and {:?}", g.orders(), p.group().orders())));
        }
        if p.conductor() != m {
            return Err(Error::GroupMismatch(format!("conductors {m} and {}", p.conductor())));
        }
    }
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.dim();
            Some(o)
        })
        .collect();
    let n: usize = parts.iter().map(|p| p.dim()).sum();
    let locate = |x: usize| -> (usize, usize) {
        let t = offsets.iter().rposition(|&o| o <= x).unwrap();
        (t, x - offsets[t])
    };
    let shift = |v: &SparseVec, off: usize| -> SparseVec { v.iter().map(|(k, c)| (k + off, c.clone())).collect() };
    let mut labels = Vec::with_capacity(n);
    let mut grading = Vec::with_capacity(n);
    for (t, p) in parts.iter().enumerate() {
        for i in 0..p.dim() {
            labels.push(if parts.len() > 1 { format!("{t}:{}", p.label(i)) } else { p.label(i).to_string() });
            grading.push(p.degree(i).clone());
        }
    }
    let unit = if parts.iter().all(|p| p.unit().is_some()) {
        Some(parts.iter().flat_map(|p| p.unit().unwrap().iter().cloned()).collect())
    } else {
        None
    };
    let builder = TableBuilder { group: g, conductor: m, labels, grading };
    builder.build(
        |p, q| {
            let ((tp, ip), (tq, iq)) = (locate(p), locate(q));
            if tp != tq {
                return vec![];
            }
            shift(parts[tp].product_of_basis(ip, iq), offsets[tp])
        },
        |p| {
            let (t, i) = locate(p);
            shift(parts[t].star_of_basis(i), offsets[t])
        },
        unit,
    )
}

pub fn direct_product_with_model(parts: &[Modelled]) -> Result<Modelled> {
    let algebra = direct_product(&parts.iter().map(|p| p.algebra.clone()).collect::<Vec<_>>())?;
    let n = algebra.dim();
    let mut components = Vec::new();
    let mut off = 0;
    for p in parts {
        components.extend(p.model.components.iter().map(|c| c.shifted(off, n)));
        off += p.algebra.dim();
    }
    Ok(Modelled { algebra, model: AlgebraModel { components } })
}

/// B ⊗ F[G] with deg(b ⊗ θ) = θ and (b ⊗ θ)^* = b^* ⊗ θ.  B must be
/// concentrated in the neutral degree.
pub fn group_algebra_extension(b: &GradedStarAlgebra, g: &FiniteAbelianGroup) -> Result<GradedStarAlgebra> {
    let e = b.group().identity();
    if let Some(i) = (0..b.dim()).find(|&i| b.degree(i) != &e) {
        return Err(Error::Invalid(format!("basis element {} is not of neutral degree", b.label(i))));
    }
    let m = b.conductor().lcm(&g.conductor());
    let b = b.embed(m)?;
    let elements = g.elements();
    let ng = elements.len();
    let n = b.dim() * ng;
    let mut labels = Vec::with_capacity(n);
    let mut grading = Vec::with_capacity(n);
    for i in 0..b.dim() {
        for t in &elements {
            labels.push(format!("{}⊗{t}", b.label(i)));
            grading.push(t.clone());
        }
    }
    let unit = b.unit().map(|u| {
        let mut out = zero_vec(n, m);
        for (i, x) in u.iter().enumerate() {
            out[i * ng] = x.clone();
        }
        out
    });
    let builder = TableBuilder { group: g.clone(), conductor: m, labels, grading };
    builder.build(
        |p, q| {
            let (i, a) = (p / ng, p % ng);
            let (j, c) = (q / ng, q % ng);
            let t = g.index_of(&g.add(&elements[a], &elements[c]));
            b.product_of_basis(i, j).iter().map(|(k, s)| (k * ng + t, s.clone())).collect()
        },
        |p| {
            let (i, a) = (p / ng, p % ng);
            b.star_of_basis(i).iter().map(|(k, s)| (k * ng + a, s.clone())).collect()
        },
        unit,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::Sign;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2)
    }

    fn el(g: &FiniteAbelianGroup, x: i64) -> GroupElement {
        g.reduce(&[x])
    }

    #[test]
    fn elementary_grading_degrees() {
        let g = z2();
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        let a = matrix_twisted(2, &g, &z, &[el(&g, 0), el(&g, 1)], &InvolutionChoice::TransposeFamily(1)).unwrap();
        assert_eq!(a.degree(1), &el(&g, 1));
        assert_eq!(a.star(&a.basis_vector(1)), a.basis_vector(2));
    }

    #[test]
    fn alpha_minus_one_negates_odd_generator() {
        let g = z2();
        let z = TwoCocycle::trivial(g.elements(), 2);
        let a = matrix_twisted(1, &g, &z, &[el(&g, 0)], &InvolutionChoice::TransposeFamily(-1)).unwrap();
        let eta1 = a.basis_vector(1);
        assert_eq!(a.star(&eta1), eta1.iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn twisted_product_in_m2_over_z2() {
        let g = z2();
        let z = TwoCocycle::trivial(g.elements(), 2);
        let a = matrix_twisted(2, &g, &z, &[el(&g, 0), el(&g, 0)], &InvolutionChoice::TransposeFamily(1)).unwrap();
        // basis order: (i, j, ξ) → (i·2 + j)·2 + ξ
        let e12_1 = a.basis_vector(3);
        let e21_1 = a.basis_vector(5);
        assert_eq!(a.mul(&e12_1, &e21_1), a.basis_vector(0));
    }

    #[test]
    fn symplectic_is_an_involution() {
        let g = FiniteAbelianGroup::trivial();
        let z = TwoCocycle::trivial(vec![g.identity()], 1);
        let a = matrix_twisted(2, &g, &z, &[g.identity(), g.identity()], &InvolutionChoice::SymplecticFamily(1));
        let a = a.unwrap();
        // E11 ↦ E22 under the symplectic involution.
        assert_eq!(a.star(&a.basis_vector(0)), a.basis_vector(3));
        let skew = a.component_basis(&crate::groupkit::CompleteDegree::new(Sign::Minus, g.identity()));
        assert_eq!(skew.len(), 3);
    }

    #[test]
    fn bad_spec_is_rejected() {
        let g = z2();
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        let mut spec = ElementaryInvolutionSpec::transpose(2, &[g.identity()], 2);
        // E12 ↦ E12 changes nothing about degrees but breaks anti-multiplicativity.
        spec.entries.insert((0, 1, g.identity()), (CycloScalar::one(2), 0, 1, g.identity()));
        let r = matrix_twisted(2, &g, &z, &[el(&g, 0), el(&g, 1)], &InvolutionChoice::Elementary(spec));
        assert!(matches!(r, Err(Error::InvalidSpec(_))));
        let r = matrix_twisted(2, &g, &z, &[el(&g, 0), el(&g, 0)], &InvolutionChoice::SymplecticFamily(1));
        assert!(r.is_ok());
        let r = matrix_twisted(3, &g, &z, &vec![el(&g, 0); 3], &InvolutionChoice::SymplecticFamily(1));
        assert!(matches!(r, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn exchange_double_basics() {
        let g = z2();
        let z = TwoCocycle::trivial(g.elements(), 2);
        let b = matrix_twisted(1, &g, &z, &[el(&g, 0)], &InvolutionChoice::None).unwrap();
        let d = exchange_double(&b).unwrap();
        assert_eq!(d.dim(), 4);
        assert!(d.verify_axioms().is_empty());
        assert_eq!(d.star(&d.basis_vector(0)), d.basis_vector(2));
    }

    #[test]
    fn products_and_extensions() {
        let g = z2();
        let one = matrix_twisted(1, &g, &TwoCocycle::trivial(vec![g.identity()], 2), &[el(&g, 0)], &InvolutionChoice::TransposeFamily(1)).unwrap();
        let p = direct_product(&[one.clone(), one.clone()]).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.verify_axioms().is_empty());
        let other = matrix_twisted(1, &FiniteAbelianGroup::cyclic(3), &TwoCocycle::trivial(vec![GroupElement(vec![0])], 3), &[GroupElement(vec![0])], &InvolutionChoice::TransposeFamily(1)).unwrap();
        assert!(matches!(direct_product(&[one.clone(), other]), Err(Error::GroupMismatch(_))));

        let f = FiniteAbelianGroup::trivial();
        let base = matrix_twisted(1, &f, &TwoCocycle::trivial(vec![f.identity()], 1), &[f.identity()], &InvolutionChoice::TransposeFamily(1)).unwrap();
        let ext = group_algebra_extension(&base, &g).unwrap();
        assert_eq!(ext.dim(), 2);
        assert!(ext.verify_axioms().is_empty());
        assert_eq!(ext.degree(1), &el(&g, 1));
        assert_eq!(ext.star(&ext.basis_vector(1)), ext.basis_vector(1));
    }
}
