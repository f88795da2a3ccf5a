//! Finite-dimensional G-graded algebras with a graded involution, stored by
//! structure constants over a homogeneous basis.

use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{CompleteDegree, FiniteAbelianGroup, GroupElement, Sign};
use crate::json::{self, as_array, as_u32, as_usize, field, parse_err};
use crate::linalg::{
    axpy, is_zero_vec, to_dense, to_sparse, unit_vec, zero_vec, Element, SparseVec,
    SpanSolver, Subspace,
};

/// Target of `multiply_project`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projection {
    Degree(GroupElement),
    Complete(CompleteDegree),
}

/// One failed axiom with the basis indices that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: &str, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation { axiom: axiom.to_string(), witness, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "axiom": self.axiom, "witness": self.witness, "detail": self.detail })
    }
}

/// An algebra given by a homogeneous basis b_0, …, b_{n−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedStarAlgebra {
    group: FiniteAbelianGroup,
    conductor: u32,
    labels: Vec<String>,
    grading: Vec<GroupElement>,
    /// mult[i][j] = b_i b_j.
    mult: Vec<Vec<SparseVec>>,
    /// star[i] = b_i^*.
    star: Vec<SparseVec>,
    unit: Option<Element>,
    family: Option<String>,
}

impl GradedStarAlgebra {
    /// Checks shapes, index ranges, conductors and degrees.  The algebra
    /// axioms themselves are checked by [`verify_axioms`](Self::verify_axioms).
    pub fn new(
        group: FiniteAbelianGroup,
        conductor: u32,
        labels: Vec<String>,
        grading: Vec<GroupElement>,
        mult: Vec<Vec<SparseVec>>,
        star: Vec<SparseVec>,
        unit: Option<Element>,
    ) -> Result<Self> {
        let n = grading.len();
        let shape = |want: usize, got: usize| -> Result<()> {
            if want == got {
                Ok(())
            } else {
                Err(Error::DimensionMismatch(want, got))
            }
        };
        shape(n, labels.len())?;
        shape(n, mult.len())?;
        shape(n, star.len())?;
        for row in &mult {
            shape(n, row.len())?;
        }
        for g in &grading {
            if !group.contains(g) {
                return Err(Error::Invalid(format!("degree {g} is not an element of the group")));
            }
        }
        let check_sparse = |v: &SparseVec| -> Result<()> {
            let mut last = None;
            for (k, s) in v {
                if *k >= n {
                    return Err(Error::Invalid(format!("basis index {k} out of range")));
                }
                if last.is_some_and(|l| l >= *k) {
                    return Err(Error::Invalid("sparse vector indices not increasing".into()));
                }
                last = Some(*k);
                if s.conductor() != conductor {
                    return Err(Error::GroupMismatch(format!(
                        "scalar of conductor {} in an algebra of conductor {conductor}",
                        s.conductor()
                    )));
                }
                if s.is_zero() {
                    return Err(Error::Invalid("explicit zero in sparse vector".into()));
                }
            }
            Ok(())
        };
        for row in &mult {
            for v in row {
                check_sparse(v)?;
            }
        }
        for v in &star {
            check_sparse(v)?;
        }
        if let Some(u) = &unit {
            shape(n, u.len())?;
            if u.iter().any(|s| s.conductor() != conductor) {
                return Err(Error::GroupMismatch("unit conductor".into()));
            }
        }
        Ok(GradedStarAlgebra { group, conductor, labels, grading, mult, star, unit, family: None })
    }

    pub fn with_family(mut self, tag: impl Into<String>) -> Self {
        self.family = Some(tag.into());
        self
    }

    pub fn with_unit(mut self, unit: Option<Element>) -> Self {
        self.unit = unit;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn family(&self) -> Option<&str> {
        self.family.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn grading(&self) -> &[GroupElement] {
        &self.grading
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.grading[i]
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn star_of_basis(&self, i: usize) -> &SparseVec {
        &self.star[i]
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn zero(&self) -> Element {
        zero_vec(self.dim(), self.conductor)
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        unit_vec(self.dim(), i, self.conductor)
    }

    pub fn scalar(&self, v: i64) -> CycloScalar {
        CycloScalar::from_int(self.conductor, v)
    }

    fn check_len(&self, v: &[CycloScalar]) -> Result<()> {
        if v.len() != self.dim() {
            Err(Error::DimensionMismatch(self.dim(), v.len()))
        } else {
            Ok(())
        }
    }

    /// u·v
    pub fn mul(&self, u: &[CycloScalar], v: &[CycloScalar]) -> Element {
        let mut out = self.zero();
        let vs: Vec<(usize, &CycloScalar)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &vs {
                let entry = &self.mult[i][j];
                if entry.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in entry {
                    if c.is_one() {
                        out[*k] += &ab;
                    } else {
                        out[*k] += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// u·v, charging the number of scalar products against `budget`.
    pub fn mul_counted(&self, u: &[CycloScalar], v: &[CycloScalar], budget: &Budget) -> Result<Element> {
        let nu = u.iter().filter(|x| !x.is_zero()).count() as u64;
        let nv = v.iter().filter(|x| !x.is_zero()).count() as u64;
        budget.charge(nu * nv)?;
        Ok(self.mul(u, v))
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, factors: &[&Element]) -> Element {
        let mut it = factors.iter();
        let first = match it.next() {
            Some(f) => (*f).clone(),
            None => return self.unit.clone().unwrap_or_else(|| self.zero()),
        };
        it.fold(first, |acc, f| self.mul(&acc, f))
    }

    pub fn star(&self, v: &[CycloScalar]) -> Element {
        let mut out = self.zero();
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, c) in &self.star[i] {
                out[*k] += &(a * c);
            }
        }
        out
    }

    pub fn project_degree(&self, v: &[CycloScalar], theta: &GroupElement) -> Element {
        v.iter()
            .zip(&self.grading)
            .map(|(x, g)| if g == theta { x.clone() } else { CycloScalar::zero(self.conductor) })
            .collect()
    }

    /// (v ± v^*)/2
    pub fn project_sign(&self, v: &[CycloScalar], sign: Sign) -> Element {
        let s = self.star(v);
        let half = CycloScalar::from_frac(self.conductor, 1, 2);
        v.iter()
            .zip(&s)
            .map(|(a, b)| {
                let t = match sign {
                    Sign::Plus => a + b,
                    Sign::Minus => a - b,
                };
                &t * &half
            })
            .collect()
    }

    pub fn project(&self, v: &[CycloScalar], cd: &CompleteDegree) -> Element {
        self.project_sign(&self.project_degree(v, &cd.degree), cd.sign)
    }

    /// u·v followed by an optional projection.
    pub fn multiply_project(
        &self,
        u: &[CycloScalar],
        v: &[CycloScalar],
        proj: Option<&Projection>,
    ) -> Result<Element> {
        self.check_len(u)?;
        self.check_len(v)?;
        let w = self.mul(u, v);
        Ok(match proj {
            None => w,
            Some(Projection::Degree(t)) => self.project_degree(&w, t),
            Some(Projection::Complete(cd)) => self.project(&w, cd),
        })
    }

    /// Indices of basis elements of degree θ.
    pub fn indices_of_degree(&self, theta: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.grading[i] == theta).collect()
    }

    /// Degree of a nonzero homogeneous element, None if v is zero or mixed.
    pub fn degree_of(&self, v: &[CycloScalar]) -> Option<GroupElement> {
        let mut deg: Option<&GroupElement> = None;
        for (x, g) in v.iter().zip(&self.grading) {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(g),
                Some(d) if d != g => return None,
                _ => {}
            }
        }
        deg.cloned()
    }

    /// Complete degree of a nonzero element that is homogeneous and either
    /// symmetric or skew.
    pub fn complete_degree_of(&self, v: &[CycloScalar]) -> Option<CompleteDegree> {
        let deg = self.degree_of(v)?;
        let s = self.star(v);
        if s == v {
            Some(CompleteDegree::new(Sign::Plus, deg))
        } else if s.iter().zip(v).all(|(a, b)| *a == -b) {
            Some(CompleteDegree::new(Sign::Minus, deg))
        } else {
            None
        }
    }

    /// Echelon basis of the homogeneous component A_θ^δ.
    pub fn component_basis(&self, cd: &CompleteDegree) -> Vec<Element> {
        let mut s = Subspace::zero(self.dim(), self.conductor);
        for i in self.indices_of_degree(&cd.degree) {
            s.insert(&self.project_sign(&self.basis_vector(i), cd.sign));
        }
        s.rows()
    }

    /// Dimensions of A_θ^δ in tuple order (θ̂₁,+), (θ̂₁,−), …
    pub fn component_dims(&self) -> Vec<usize> {
        CompleteDegree::all(&self.group).iter().map(|cd| self.component_basis(cd).len()).collect()
    }

    /// Tr(L_x) for left multiplication on A.
    pub fn left_trace(&self, x: &[CycloScalar]) -> CycloScalar {
        let mut t = CycloScalar::zero(self.conductor);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                for (k, c) in &self.mult[i][j] {
                    if *k == j {
                        t += &(a * c);
                    }
                }
            }
        }
        t
    }

    /// u·v on sparse vectors.
    pub fn mul_sparse(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (i, a) in u {
            for (j, b) in v {
                let entry = &self.mult[*i][*j];
                if entry.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in entry {
                    let t = if c.is_one() { ab.clone() } else { &ab * c };
                    match acc.get_mut(k) {
                        Some(e) => *e += &t,
                        None => {
                            acc.insert(*k, t);
                        }
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn star_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (i, a) in v {
            for (k, c) in &self.star[*i] {
                let t = a * c;
                match acc.get_mut(k) {
                    Some(e) => *e += &t,
                    None => {
                        acc.insert(*k, t);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Checks associativity, gradedness of the product and of the star, the
    /// involution laws and the unit.  The first witness for each failed
    /// axiom is reported.
    pub fn verify_axioms(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        let m = self.conductor;
        let basis: Vec<SparseVec> = (0..n).map(|i| vec![(i, CycloScalar::one(m))]).collect();

        'grading: for i in 0..n {
            for j in 0..n {
                let want = self.group.add(&self.grading[i], &self.grading[j]);
                for (k, _) in &self.mult[i][j] {
                    if self.grading[*k] != want {
                        out.push(Violation::new(
                            "grading",
                            vec![i, j, *k],
                            format!("{}·{} has a component on {}", self.labels[i], self.labels[j], self.labels[*k]),
                        ));
                        break 'grading;
                    }
                }
            }
        }

        'assoc: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_sparse(&self.mult[i][j], &basis[k]);
                    let right = self.mul_sparse(&basis[i], &self.mult[j][k]);
                    if left != right {
                        out.push(Violation::new(
                            "associativity",
                            vec![i, j, k],
                            format!("({0}{1}){2} ≠ {0}({1}{2})", self.labels[i], self.labels[j], self.labels[k]),
                        ));
                        break 'assoc;
                    }
                }
            }
        }

        for i in 0..n {
            if let Some((k, _)) = self.star[i].iter().find(|(k, _)| self.grading[*k] != self.grading[i]) {
                out.push(Violation::new(
                    "star-graded",
                    vec![i, *k],
                    format!("star({}) has a component on {}", self.labels[i], self.labels[*k]),
                ));
                break;
            }
        }
        for i in 0..n {
            if self.star_sparse(&self.star[i]) != basis[i] {
                out.push(Violation::new("star-order", vec![i], format!("star(star({})) ≠ {}", self.labels[i], self.labels[i])));
                break;
            }
        }
        'anti: for i in 0..n {
            for j in 0..n {
                if self.star_sparse(&self.mult[i][j]) != self.mul_sparse(&self.star[j], &self.star[i]) {
                    out.push(Violation::new(
                        "star-antimultiplicative",
                        vec![i, j],
                        format!("star({0}{1}) ≠ star({1})star({0})", self.labels[i], self.labels[j]),
                    ));
                    break 'anti;
                }
            }
        }

        if let Some(u) = &self.unit {
            let us = to_sparse(u);
            for i in 0..n {
                if self.mul_sparse(&us, &basis[i]) != basis[i] || self.mul_sparse(&basis[i], &us) != basis[i] {
                    out.push(Violation::new("unit", vec![i], format!("1·{0} or {0}·1 differs from {0}", self.labels[i])));
                    break;
                }
            }
            let e = self.group.identity();
            if let Some(i) = (0..n).find(|&i| !u[i].is_zero() && self.grading[i] != e) {
                out.push(Violation::new("unit-degree", vec![i], "unit has a non-neutral component"));
            }
            if self.star_sparse(&us) != us {
                out.push(Violation::new("unit-star", vec![], "unit is not symmetric"));
            }
        }
        out
    }

    /// Smallest graded star-closed two-sided ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[Element]) -> Subspace {
        let n = self.dim();
        let mut s = Subspace::zero(n, self.conductor);
        let mut queue: VecDeque<Element> = VecDeque::new();
        let elements = self.group.elements();
        let push = |v: Element, s: &mut Subspace, q: &mut VecDeque<Element>| {
            if !is_zero_vec(&v) && s.insert(&v) {
                q.push_back(v);
            }
        };
        for g in gens {
            for t in &elements {
                push(self.project_degree(g, t), &mut s, &mut queue);
            }
        }
        while let Some(v) = queue.pop_front() {
            if s.dim() == n {
                break;
            }
            push(self.star(&v), &mut s, &mut queue);
            for i in 0..n {
                let b = self.basis_vector(i);
                push(self.mul(&b, &v), &mut s, &mut queue);
                push(self.mul(&v, &b), &mut s, &mut queue);
            }
        }
        s
    }

    /// Span of the products of all pairs from `a` and `b`.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.dim(), self.conductor);
        let (ra, rb) = (a.rows(), b.rows());
        for x in &ra {
            for y in &rb {
                s.insert(&self.mul(x, y));
            }
        }
        s
    }

    /// True when the subspace is closed under multiplication.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let rows = s.rows();
        rows.iter().all(|x| rows.iter().all(|y| s.contains(&self.mul(x, y))))
    }

    /// Homogeneous basis of a graded subspace: the echelon bases of its
    /// G-components.  Errors when the subspace is not graded.
    pub fn graded_basis(&self, s: &Subspace) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        let mut total = 0;
        for t in self.group.elements() {
            let part = Subspace::spanned_by(
                self.dim(),
                self.conductor,
                &s.rows().iter().map(|r| self.project_degree(r, &t)).collect::<Vec<_>>(),
            );
            for r in part.rows() {
                if !s.contains(&r) {
                    return Err(Error::Invalid("subspace is not graded".into()));
                }
                total += 1;
                out.push(r);
            }
        }
        debug_assert_eq!(total, s.dim());
        Ok(out)
    }

    /// Basis of a graded star-closed subspace by elements of a single
    /// complete degree, in tuple order.
    pub fn complete_basis(&self, s: &Subspace) -> Result<Vec<(CompleteDegree, Element)>> {
        let mut out = Vec::new();
        for cd in CompleteDegree::all(&self.group) {
            let part = Subspace::spanned_by(
                self.dim(),
                self.conductor,
                &s.rows().iter().map(|r| self.project(r, &cd)).collect::<Vec<_>>(),
            );
            for r in part.rows() {
                if !s.contains(&r) {
                    return Err(Error::Invalid("subspace is not graded and star-closed".into()));
                }
                out.push((cd.clone(), r));
            }
        }
        if out.len() != s.dim() {
            return Err(Error::Invalid("subspace is not graded and star-closed".into()));
        }
        Ok(out)
    }

    /// A/I for a graded star-closed ideal I, on the basis of standard
    /// vectors at the non-pivot columns of I.  Also returns the projection
    /// A → A/I as a function of coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(GradedStarAlgebra, QuotientMap)> {
        let n = self.dim();
        if ideal.ambient_dim() != n {
            return Err(Error::DimensionMismatch(n, ideal.ambient_dim()));
        }
        let pivots = ideal.pivot_columns();
        let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let map = QuotientMap { ideal: ideal.clone(), keep: keep.clone() };
        let m = self.conductor;
        let mult = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| to_sparse(&map.apply(&to_dense(&self.mult[i][j], n, m))))
                    .collect()
            })
            .collect();
        let star = keep.iter().map(|&i| to_sparse(&map.apply(&to_dense(&self.star[i], n, m)))).collect();
        let unit = self.unit.as_ref().map(|u| map.apply(u));
        let q = GradedStarAlgebra::new(
            self.group.clone(),
            m,
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
            keep.iter().map(|&i| self.grading[i].clone()).collect(),
            mult,
            star,
            unit,
        )?;
        Ok((q, map))
    }

    /// The subalgebra spanned by independent homogeneous elements, in that
    /// basis.  The span must be closed under product and star.
    pub fn subalgebra(&self, basis: &[Element], labels: Option<Vec<String>>) -> Result<GradedStarAlgebra> {
        let n = self.dim();
        let m = self.conductor;
        let solver = SpanSolver::new(basis, n, m);
        if solver.rank() != basis.len() {
            return Err(Error::Invalid("subalgebra basis is linearly dependent".into()));
        }
        let grading = basis
            .iter()
            .map(|b| self.degree_of(b).ok_or_else(|| Error::Invalid("subalgebra basis element is not homogeneous".into())))
            .collect::<Result<Vec<_>>>()?;
        let express = |v: &Element| -> Result<SparseVec> {
            solver
                .solve(v)
                .map(|c| to_sparse(&c))
                .ok_or_else(|| Error::Invalid("span is not closed under product and star".into()))
        };
        let mut mult = Vec::with_capacity(basis.len());
        for x in basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in basis {
                row.push(express(&self.mul(x, y))?);
            }
            mult.push(row);
        }
        let star = basis.iter().map(|x| express(&self.star(x))).collect::<Result<Vec<_>>>()?;
        let labels = labels.unwrap_or_else(|| (0..basis.len()).map(|i| format!("c{i}")).collect());
        GradedStarAlgebra::new(self.group.clone(), m, labels, grading, mult, star, None)
    }

    /// The same algebra over Q(ζ_target), m | target.
    pub fn embed(&self, target: u32) -> Result<GradedStarAlgebra> {
        let e = |v: &SparseVec| -> Result<SparseVec> {
            v.iter().map(|(k, s)| Ok((*k, s.embed(target)?))).collect()
        };
        let mult = self
            .mult
            .iter()
            .map(|row| row.iter().map(e).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let star = self.star.iter().map(e).collect::<Result<Vec<_>>>()?;
        let unit = match &self.unit {
            Some(u) => Some(u.iter().map(|s| s.embed(target)).collect::<std::result::Result<Vec<_>, _>>()?),
            None => None,
        };
        let mut out = GradedStarAlgebra::new(
            self.group.clone(),
            target,
            self.labels.clone(),
            self.grading.clone(),
            mult,
            star,
            unit,
        )?;
        out.family = self.family.clone();
        Ok(out)
    }

    /// Reads a single element from JSON: a dense list of scalars or
    /// `{"sparse": [[k, scalar], …]}`.
    pub fn element_from_json(&self, v: &Value) -> Result<Element> {
        if let Some(sp) = v.get("sparse") {
            let s = json::sparse_from_json(sp, self.dim(), self.conductor)?;
            return Ok(to_dense(&s, self.dim(), self.conductor));
        }
        json::vector_from_json(v, self.dim(), self.conductor)
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.mult[i][j].is_empty() {
                    mult.push(json!([i, j, json::sparse_to_json(&self.mult[i][j])]));
                }
            }
        }
        let mut doc = json!({
            "format": json::FORMAT,
            "group": json::group_to_json(&self.group),
            "conductor": self.conductor,
            "basis": (0..n).map(|i| json!({"label": self.labels[i], "degree": json::element_to_json(&self.grading[i])})).collect::<Vec<_>>(),
            "mult": mult,
            "star": (0..n).map(|i| json!([i, json::sparse_to_json(&self.star[i])])).collect::<Vec<_>>(),
        });
        if let Some(u) = &self.unit {
            doc["unit"] = json::vector_to_json(u);
        }
        if let Some(f) = &self.family {
            doc["family"] = Value::from(f.clone());
        }
        doc
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        json::check_format(v)?;
        let group = json::group_from_json(field(v, "group")?)?;
        let conductor = match v.get("conductor") {
            Some(c) => as_u32(c, "conductor")?,
            None => group.conductor(),
        };
        if conductor == 0 {
            return Err(parse_err("conductor must be positive"));
        }
        let basis = as_array(field(v, "basis")?, "basis")?;
        let n = basis.len();
        let mut labels = Vec::with_capacity(n);
        let mut grading = Vec::with_capacity(n);
        for (i, b) in basis.iter().enumerate() {
            labels.push(b.get("label").and_then(|l| l.as_str()).map(str::to_string).unwrap_or_else(|| format!("b{i}")));
            grading.push(json::element_from_json(field(b, "degree")?, &group)?);
        }
        let mut mult = vec![vec![SparseVec::new(); n]; n];
        for entry in as_array(field(v, "mult")?, "mult")? {
            let e = as_array(entry, "mult entry")?;
            if e.len() != 3 {
                return Err(parse_err("mult entry must be [i, j, [[k, scalar], …]]"));
            }
            let (i, j) = (as_usize(&e[0], "mult i")?, as_usize(&e[1], "mult j")?);
            if i >= n || j >= n {
                return Err(parse_err(format!("mult entry ({i},{j}) out of range")));
            }
            mult[i][j] = json::sparse_from_json(&e[2], n, conductor)?;
        }
        let mut star: Vec<Option<SparseVec>> = vec![None; n];
        for entry in as_array(field(v, "star")?, "star")? {
            let e = as_array(entry, "star entry")?;
            if e.len() != 2 {
                return Err(parse_err("star entry must be [i, [[k, scalar], …]]"));
            }
            let i = as_usize(&e[0], "star i")?;
            if i >= n {
                return Err(parse_err(format!("star entry {i} out of range")));
            }
            star[i] = Some(json::sparse_from_json(&e[1], n, conductor)?);
        }
        let star = star
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| parse_err(format!("star image of basis element {i} missing"))))
            .collect::<Result<Vec<_>>>()?;
        let unit = match v.get("unit") {
            Some(Value::Null) | None => None,
            Some(u) => Some(json::vector_from_json(u, n, conductor)?),
        };
        let mut a = GradedStarAlgebra::new(group, conductor, labels, grading, mult, star, unit)?;
        a.family = v.get("family").and_then(|f| f.as_str()).map(str::to_string);
        Ok(a)
    }
}

/// The projection A → A/I used by [`GradedStarAlgebra::quotient`].
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ideal: Subspace,
    keep: Vec<usize>,
}

impl QuotientMap {
    pub fn apply(&self, v: &[CycloScalar]) -> Element {
        let r = self.ideal.reduce(v);
        self.keep.iter().map(|&i| r[i].clone()).collect()
    }

    /// Lift of quotient coordinates to the chosen complement in A.
    pub fn lift(&self, v: &[CycloScalar], n: usize) -> Element {
        let m = self.ideal.conductor();
        let mut out = zero_vec(n, m);
        for (x, &i) in v.iter().zip(&self.keep) {
            out[i] = x.clone();
        }
        out
    }

    pub fn kept_indices(&self) -> &[usize] {
        &self.keep
    }
}

/// Assembles an algebra from closures giving products and stars of basis
/// indices.  Used by the builders.
pub struct TableBuilder {
    pub group: FiniteAbelianGroup,
    pub conductor: u32,
    pub labels: Vec<String>,
    pub grading: Vec<GroupElement>,
}

impl TableBuilder {
    pub fn build<P, S>(self, product: P, star: S, unit: Option<Element>) -> Result<GradedStarAlgebra>
    where
        P: Fn(usize, usize) -> SparseVec,
        S: Fn(usize) -> SparseVec,
    {
        let n = self.grading.len();
        let mult = (0..n).map(|i| (0..n).map(|j| product(i, j)).collect()).collect();
        let st = (0..n).map(star).collect();
        GradedStarAlgebra::new(self.group, self.conductor, self.labels, self.grading, mult, st, unit)
    }
}

/// Σ c_k v_k
pub fn combination(n: usize, m: u32, terms: &[(CycloScalar, &Element)]) -> Element {
    let mut out = zero_vec(n, m);
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}
