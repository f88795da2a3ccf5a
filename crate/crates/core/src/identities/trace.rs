//! The trace forms f₁(a) = Tr 𝔗_b and f₂(a₁, a₂) = Tr(𝔗_{b₁} 𝔗_{b₂}),
//! where b is the neutral part of the semisimple component of a and
//! 𝔗_b(c) = bc + cb on the semisimple part, and checks of the trace
//! identities they satisfy.

use serde_json::{json, Value};

use super::polynomial::{for_each_tuple, AlternatedPolynomial, MultilinearPolynomial, StarVariable};
use crate::algebra::GradedStarAlgebra;
use crate::budget::Budget;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{CompleteDegree, Sign};
use crate::json as js;
use crate::linalg::{add_vec, is_zero_vec, scale_vec, sub_vec, Element};
use crate::structure::{gi_parameters, VerifiedDecomposition};

/// Precomputed traces on the canonical basis D.
#[derive(Clone, Debug)]
pub struct TraceForms {
    /// f₁ on the standard basis vectors of A.
    f1_basis: Vec<CycloScalar>,
    /// f₂ on pairs of standard basis vectors of A.
    f2_basis: Vec<Vec<CycloScalar>>,
    m: u32,
}

fn mat_mul(x: &[Vec<CycloScalar>], y: &[Vec<CycloScalar>], m: u32) -> Vec<Vec<CycloScalar>> {
    let t = x.len();
    (0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    let mut s = CycloScalar::zero(m);
                    for k in 0..t {
                        if !x[i][k].is_zero() && !y[k][j].is_zero() {
                            s += &(&x[i][k] * &y[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn trace(x: &[Vec<CycloScalar>], m: u32) -> CycloScalar {
    x.iter().enumerate().fold(CycloScalar::zero(m), |acc, (i, row)| &acc + &row[i])
}

impl TraceForms {
    pub fn new(dec: &VerifiedDecomposition) -> Result<Self> {
        let a = dec.algebra();
        let (n, m, t) = (a.dim(), a.conductor(), dec.t());
        let e = a.group().identity();
        let d: Vec<Element> = dec.elementary().into_iter().take(t).map(|x| x.vector).collect();
        let neutral: Vec<bool> = dec.elementary().iter().take(t).map(|x| x.cd.degree == e).collect();
        // Matrix of 𝔗_{d_k} in the basis D: column l holds the coordinates
        // of d_k d_l + d_l d_k.
        let mut ops: Vec<Option<Vec<Vec<CycloScalar>>>> = Vec::with_capacity(t);
        for k in 0..t {
            if !neutral[k] {
                ops.push(None);
                continue;
            }
            let cols = (0..t)
                .map(|l| dec.semisimple_coords(&add_vec(&a.mul(&d[k], &d[l]), &a.mul(&d[l], &d[k]))))
                .collect::<Result<Vec<_>>>()?;
            ops.push(Some((0..t).map(|i| (0..t).map(|l| cols[l][i].clone()).collect()).collect()));
        }
        let t1: Vec<CycloScalar> =
            ops.iter().map(|o| o.as_ref().map_or(CycloScalar::zero(m), |x| trace(x, m))).collect();
        let t2: Vec<Vec<CycloScalar>> = ops
            .iter()
            .map(|x| {
                ops.iter()
                    .map(|y| match (x, y) {
                        (Some(x), Some(y)) => trace(&mat_mul(x, y, m), m),
                        _ => CycloScalar::zero(m),
                    })
                    .collect()
            })
            .collect();
        // Coordinates over D of every standard basis vector.
        let coords = (0..n).map(|i| dec.semisimple_coords(&a.basis_vector(i))).collect::<Result<Vec<_>>>()?;
        let dot1 = |c: &Element| c.iter().zip(&t1).fold(CycloScalar::zero(m), |acc, (x, y)| &acc + &(x * y));
        let f1_basis = coords.iter().map(dot1).collect();
        let f2_basis = coords
            .iter()
            .map(|ci| {
                coords
                    .iter()
                    .map(|cj| {
                        let mut s = CycloScalar::zero(m);
                        for (k, x) in ci.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for (l, y) in cj.iter().enumerate() {
                                if !y.is_zero() && !t2[k][l].is_zero() {
                                    s += &(&(x * y) * &t2[k][l]);
                                }
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(TraceForms { f1_basis, f2_basis, m })
    }

    fn check(&self, x: &[CycloScalar]) -> Result<()> {
        if x.len() != self.f1_basis.len() {
            return Err(Error::DecompositionMismatch(format!(
                "element of length {} for dimension {}",
                x.len(),
                self.f1_basis.len()
            )));
        }
        Ok(())
    }

    pub fn f1(&self, x: &[CycloScalar]) -> Result<CycloScalar> {
        self.check(x)?;
        Ok(x.iter().zip(&self.f1_basis).fold(CycloScalar::zero(self.m), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn f2(&self, x: &[CycloScalar], y: &[CycloScalar]) -> Result<CycloScalar> {
        self.check(x)?;
        self.check(y)?;
        let mut s = CycloScalar::zero(self.m);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() && !self.f2_basis[i][j].is_zero() {
                    s += &(&(a * b) * &self.f2_basis[i][j]);
                }
            }
        }
        Ok(s)
    }

    /// f₁ on the standard basis vectors, for evaluation of linear
    /// combinations with polynomial coefficients.
    pub fn f1_on_basis(&self) -> &[CycloScalar] {
        &self.f1_basis
    }

    pub fn f2_on_basis(&self) -> &[Vec<CycloScalar>] {
        &self.f2_basis
    }
}

/// f₁(a₁) when `a2` is None, f₂(a₁, a₂) otherwise.
pub fn trace_forms(dec: &VerifiedDecomposition, a1: &[CycloScalar], a2: Option<&[CycloScalar]>) -> Result<CycloScalar> {
    let forms = TraceForms::new(dec)?;
    match a2 {
        None => forms.f1(a1),
        Some(a2) => forms.f2(a1, a2),
    }
}

/// One failed instance of a trace identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCounterexample {
    pub identity: String,
    pub detail: String,
}

impl TraceCounterexample {
    pub fn to_json(&self) -> Value {
        json!({ "identity": self.identity, "detail": self.detail })
    }
}

/// Outcome of [`check_trace_identities`].
#[derive(Clone, Debug, Default)]
pub struct TraceReport {
    /// Number of (form value) vanishing instances checked.
    pub vanishing_checked: u64,
    /// Number of substitution instances checked, per identity.
    pub substitution_checked: [u64; 3],
    pub counterexamples: Vec<TraceCounterexample>,
}

impl TraceReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vanishing_checked": self.vanishing_checked,
            "substitution_checked": {
                "f2_symmetric": self.substitution_checked[0],
                "f2_skew": self.substitution_checked[1],
                "f1_symmetric": self.substitution_checked[2],
            },
            "counterexamples": self.counterexamples.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "holds": self.holds(),
        })
    }
}

/// A polynomial alternating on one collection of variables of size dims_gi
/// (the `normal` variables) plus whatever else it carries.
#[derive(Clone, Debug)]
pub struct TraceTestPolynomial {
    pub f: AlternatedPolynomial,
    pub normal: Vec<usize>,
}

impl TraceTestPolynomial {
    pub fn to_json(&self) -> Value {
        let mut v = self.f.base.to_json();
        v["alternate"] = json!(self.f.sets);
        v["normal"] = json!(self.normal);
        v
    }

    /// A polynomial document with optional "alternate" (list of id sets)
    /// and "normal" (ids) fields.
    pub fn from_json(v: &Value, a: &GradedStarAlgebra) -> Result<Self> {
        let mut plain = v.clone();
        if let Some(o) = plain.as_object_mut() {
            o.remove("alternate");
            o.remove("normal");
        }
        let base = MultilinearPolynomial::from_json(&plain, a.group(), a.conductor())?;
        let ids = |x: &Value, what: &str| -> Result<Vec<usize>> {
            js::as_array(x, what)?.iter().map(|i| js::as_usize(i, what)).collect()
        };
        let sets = match v.get("alternate") {
            None => Vec::new(),
            Some(s) => js::as_array(s, "alternate")?.iter().map(|x| ids(x, "alternate")).collect::<Result<_>>()?,
        };
        let normal = match v.get("normal") {
            None => return Err(js::parse_err("trace identity checks need the 'normal' alternating variables")),
            Some(x) => ids(x, "normal")?,
        };
        Ok(TraceTestPolynomial { f: AlternatedPolynomial::new(base, sets)?, normal })
    }
}

/// A polynomial of type (dims_gi; nd − 1; 1): the product of all its
/// variables, alternated over nd − 1 large collections followed by one
/// collection of size dims_gi.  A large collection has one extra variable
/// in the first complete degree where D ∪ U is larger than D, so that it
/// can carry a radical element.
pub fn trace_test_polynomial(dec: &VerifiedDecomposition) -> Result<TraceTestPolynomial> {
    let a = dec.algebra();
    let g = a.group();
    let dims = gi_parameters(dec).dims_gi;
    let all = CompleteDegree::all(g);
    let mut vars = Vec::new();
    let mut sets = Vec::new();
    let mut normal = Vec::new();
    let mut collection = |counts: &[usize], vars: &mut Vec<StarVariable>, is_normal: bool| {
        for (cd, &c) in all.iter().zip(counts) {
            let mut set = Vec::new();
            for _ in 0..c {
                let id = vars.len() + 1;
                vars.push(StarVariable::of_degree(id, cd));
                set.push(id);
            }
            if is_normal {
                normal.extend(set.iter().copied());
            }
            if set.len() > 1 {
                sets.push(set);
            }
        }
    };
    let extra = all
        .iter()
        .zip(&dims)
        .position(|(cd, &d)| dec.elementary_of(cd).len() > d)
        .unwrap_or(0);
    for _ in 1..dec.nd() {
        let mut large = dims.clone();
        large[extra] += 1;
        collection(&large, &mut vars, false);
    }
    collection(&dims, &mut vars, true);
    let word: Vec<usize> = (1..=vars.len()).collect();
    let base = MultilinearPolynomial::monomial(vars, a.conductor(), word)?;
    Ok(TraceTestPolynomial { f: AlternatedPolynomial::new(base, sets)?, normal })
}

/// Checks on all elementary evaluations over D ∪ U:
///
/// * f₁(x) = 0 unless x ∈ Y^𝔢 and f₂(x₁, x₂) = 0 unless x₁, x₂ ∈ Y^𝔢 or
///   x₁, x₂ ∈ Z^𝔢 (so that f₁(x₃)·h and f₂(x₁,x₂)·h vanish for every h);
/// * f₂(y₁,y₂)·f = Σ_i f|_{x_i := y₁∘(y₂∘x_i)}, the same for z₁, z₂, and
///   f₁(y)·f = Σ_i f|_{x_i := y∘x_i}, the sums running over the normal
///   variables.
pub fn check_trace_identities(
    dec: &VerifiedDecomposition,
    poly: &TraceTestPolynomial,
    budget: &Budget,
) -> Result<TraceReport> {
    let a = dec.algebra();
    let g = a.group();
    let m = a.conductor();
    let forms = TraceForms::new(dec)?;
    let f = &poly.f;
    let base = &f.base;
    if base.conductor() != m {
        return Err(Error::GroupMismatch(format!("polynomial over Q(ζ_{}) for an algebra over Q(ζ_{m})", base.conductor())));
    }
    let dims = gi_parameters(dec).dims_gi;
    let mut counts = vec![0; dims.len()];
    for id in &poly.normal {
        let v = base.var(*id).ok_or_else(|| Error::Invalid(format!("normal variable {id} is not declared")))?;
        counts[v.complete_degree().slot(g)] += 1;
    }
    if counts != dims {
        return Err(Error::Invalid(format!("normal variables have profile {counts:?}, dims_gi is {dims:?}")));
    }

    let mut report = TraceReport::default();
    let e = g.identity();
    let sym = CompleteDegree::new(Sign::Plus, e.clone());
    let skew = CompleteDegree::new(Sign::Minus, e.clone());
    let all = CompleteDegree::all(g);
    let label = |x: &crate::structure::Elementary| format!("{:?}", x.kind);

    // Vanishing of the forms outside the exempt complete degrees.
    for cd in &all {
        if *cd == sym {
            continue;
        }
        for x in dec.elementary_of(cd) {
            report.vanishing_checked += 1;
            let v = forms.f1(&x.vector)?;
            if !v.is_zero() {
                report.counterexamples.push(TraceCounterexample {
                    identity: "f1-vanishing".into(),
                    detail: format!("f1({}) = {v} for x of degree {cd}", label(&x)),
                });
            }
        }
    }
    for c1 in &all {
        for c2 in &all {
            if (*c1 == sym && *c2 == sym) || (*c1 == skew && *c2 == skew) {
                continue;
            }
            for x1 in dec.elementary_of(c1) {
                for x2 in dec.elementary_of(c2) {
                    report.vanishing_checked += 1;
                    let v = forms.f2(&x1.vector, &x2.vector)?;
                    if !v.is_zero() {
                        report.counterexamples.push(TraceCounterexample {
                            identity: "f2-vanishing".into(),
                            detail: format!("f2({}, {}) = {v} for degrees {c1}, {c2}", label(&x1), label(&x2)),
                        });
                    }
                }
            }
        }
    }

    // Substitution identities.  Inside an alternation set that lies wholly
    // inside or wholly outside the normal variables both sides are
    // alternating, so increasing index tuples suffice.
    let vars = base.vars();
    let lists: Vec<Vec<Element>> = vars
        .iter()
        .map(|v| dec.elementary_of(&v.complete_degree()).into_iter().map(|x| x.vector).collect())
        .collect();
    let pos_of = |id: usize| base.position(id).unwrap();
    let normal_pos: Vec<usize> = poly.normal.iter().map(|&id| pos_of(id)).collect();
    let ordered_sets: Vec<Vec<usize>> = f
        .sets
        .iter()
        .filter(|s| {
            let inside = s.iter().filter(|id| poly.normal.contains(id)).count();
            inside == 0 || inside == s.len()
        })
        .map(|s| s.iter().map(|&id| pos_of(id)).collect())
        .collect();
    let increasing = |idx: &[usize]| ordered_sets.iter().all(|s| s.windows(2).all(|w| idx[w[0]] < idx[w[1]]));
    let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();

    let ys: Vec<Element> = dec.elementary_of(&sym).into_iter().map(|x| x.vector).collect();
    let zs: Vec<Element> = dec.elementary_of(&skew).into_iter().map(|x| x.vector).collect();
    let jordan = |b: &Element, c: &Element| add_vec(&a.mul(b, c), &a.mul(c, b));
    // (name, coefficient, operator) triples.
    let mut ops: Vec<(usize, String, CycloScalar, Vec<Element>)> = Vec::new();
    let per_op = |op: &dyn Fn(&Element) -> Element, lists: &[Vec<Element>]| -> Vec<Element> {
        normal_pos.iter().flat_map(|&p| lists[p].iter().map(op)).collect()
    };
    for (which, list, name) in [(0usize, &ys, "y"), (1, &zs, "z")] {
        for (i1, x1) in list.iter().enumerate() {
            for (i2, x2) in list.iter().enumerate() {
                let op = |c: &Element| jordan(x1, &jordan(x2, c));
                ops.push((which, format!("f2({name}{i1},{name}{i2})"), forms.f2(x1, x2)?, per_op(&op, &lists)));
            }
        }
    }
    for (i, y) in ys.iter().enumerate() {
        let op = |c: &Element| jordan(y, c);
        ops.push((2, format!("f1(y{i})"), forms.f1(y)?, per_op(&op, &lists)));
    }
    // Offsets of each normal variable's images inside the flattened lists.
    let offsets: Vec<usize> = normal_pos
        .iter()
        .scan(0, |acc, &p| {
            let o = *acc;
            *acc += lists[p].len();
            Some(o)
        })
        .collect();

    let names = ["f2-symmetric", "f2-skew", "f1-symmetric"];
    for_each_tuple(&sizes, |idx| {
        if !increasing(idx) {
            return Ok(true);
        }
        let vals: Vec<Element> = idx.iter().enumerate().map(|(t, &i)| lists[t][i].clone()).collect();
        let fv = f.evaluate(a, &vals, budget)?;
        for (which, name, coef, images) in &ops {
            report.substitution_checked[*which] += 1;
            let mut rhs = a.zero();
            for (k, &p) in normal_pos.iter().enumerate() {
                let mut v = vals.clone();
                v[p] = images[offsets[k] + idx[p]].clone();
                rhs = add_vec(&rhs, &f.evaluate(a, &v, budget)?);
            }
            let diff = sub_vec(&scale_vec(&fv, coef), &rhs);
            if !is_zero_vec(&diff) {
                report.counterexamples.push(TraceCounterexample {
                    identity: names[*which].into(),
                    detail: format!("{name}·f ≠ Σ substitutions at elementary tuple {idx:?}"),
                });
                if report.counterexamples.len() >= 16 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    let _ = m;
    Ok(report)
}
