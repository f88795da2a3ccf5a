//! Multilinear polynomials in symmetric (Y) and skew (Z) graded variables,
//! with evaluation, the involution, alternators and identity checks.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::permutations;
use crate::algebra::GradedStarAlgebra;
use crate::budget::Budget;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{CompleteDegree, FiniteAbelianGroup, GroupElement, Sign};
use crate::json::{self as js, as_array, as_usize, field, parse_err};
use crate::linalg::{is_zero_vec, kernel, zero_vec, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Y,
    Z,
}

impl VarKind {
    pub fn sign(self) -> Sign {
        match self {
            VarKind::Y => Sign::Plus,
            VarKind::Z => Sign::Minus,
        }
    }

    pub fn from_sign(s: Sign) -> Self {
        match s {
            Sign::Plus => VarKind::Y,
            Sign::Minus => VarKind::Z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarVariable {
    pub id: usize,
    pub kind: VarKind,
    pub degree: GroupElement,
}

impl StarVariable {
    pub fn y(id: usize, degree: GroupElement) -> Self {
        StarVariable { id, kind: VarKind::Y, degree }
    }

    pub fn z(id: usize, degree: GroupElement) -> Self {
        StarVariable { id, kind: VarKind::Z, degree }
    }

    pub fn of_degree(id: usize, cd: &CompleteDegree) -> Self {
        StarVariable { id, kind: VarKind::from_sign(cd.sign), degree: cd.degree.clone() }
    }

    pub fn complete_degree(&self) -> CompleteDegree {
        CompleteDegree::new(self.kind.sign(), self.degree.clone())
    }

    pub fn name(&self) -> String {
        let k = match self.kind {
            VarKind::Y => "y",
            VarKind::Z => "z",
        };
        format!("{k}{}[{}]", self.id, self.degree)
    }

    fn to_json(&self) -> Value {
        let kind = match self.kind {
            VarKind::Y => "Y",
            VarKind::Z => "Z",
        };
        json!({ "id": self.id, "kind": kind, "degree": js::element_to_json(&self.degree) })
    }

    fn from_json(v: &Value, g: &FiniteAbelianGroup) -> Result<Self> {
        let kind = match field(v, "kind")?.as_str() {
            Some("Y") | Some("y") => VarKind::Y,
            Some("Z") | Some("z") => VarKind::Z,
            _ => return Err(parse_err("variable kind must be \"Y\" or \"Z\"")),
        };
        Ok(StarVariable { id: as_usize(field(v, "id")?, "variable id")?, kind, degree: js::element_from_json(field(v, "degree")?, g)? })
    }
}

/// Variables for a multidegree given as counts per complete degree in the
/// tuple order (θ̂₁,+), (θ̂₁,−), (θ̂₂,+), …; ids run from 1.
pub fn multidegree_variables(g: &FiniteAbelianGroup, counts: &[usize]) -> Result<Vec<StarVariable>> {
    let all = CompleteDegree::all(g);
    if counts.len() != all.len() {
        return Err(Error::Invalid(format!("multidegree needs {} entries, got {}", all.len(), counts.len())));
    }
    let mut out = Vec::new();
    for (cd, &c) in all.iter().zip(counts) {
        for _ in 0..c {
            out.push(StarVariable::of_degree(out.len() + 1, cd));
        }
    }
    Ok(out)
}

/// A word is a sequence of variable ids.
pub type Word = Vec<usize>;

fn check_vars(vars: &[StarVariable]) -> Result<()> {
    let ids: BTreeSet<usize> = vars.iter().map(|v| v.id).collect();
    if ids.len() != vars.len() {
        return Err(Error::Invalid("variable ids must be unique".into()));
    }
    Ok(())
}

/// Σ c_w w over words w that use every declared variable exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    vars: Vec<StarVariable>,
    m: u32,
    terms: BTreeMap<Word, CycloScalar>,
}

impl MultilinearPolynomial {
    pub fn zero(vars: Vec<StarVariable>, m: u32) -> Result<Self> {
        check_vars(&vars)?;
        Ok(MultilinearPolynomial { vars, m, terms: BTreeMap::new() })
    }

    pub fn from_terms(vars: Vec<StarVariable>, m: u32, terms: Vec<(CycloScalar, Word)>) -> Result<Self> {
        let mut f = Self::zero(vars, m)?;
        for (c, w) in terms {
            f.add_term(c, w)?;
        }
        Ok(f)
    }

    /// The single word w with coefficient 1.
    pub fn monomial(vars: Vec<StarVariable>, m: u32, word: Word) -> Result<Self> {
        Self::from_terms(vars, m, vec![(CycloScalar::one(m), word)])
    }

    /// [x_a, x_b] = x_a x_b − x_b x_a on two variables.
    pub fn commutator(a: StarVariable, b: StarVariable, m: u32) -> Result<Self> {
        let (ia, ib) = (a.id, b.id);
        Self::from_terms(
            vec![a, b],
            m,
            vec![(CycloScalar::one(m), vec![ia, ib]), (CycloScalar::from_int(m, -1), vec![ib, ia])],
        )
    }

    fn check_word(&self, w: &[usize]) -> Result<()> {
        let mut seen: Vec<usize> = w.to_vec();
        seen.sort_unstable();
        let mut ids: Vec<usize> = self.vars.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        if seen != ids {
            return Err(Error::Invalid(format!("word {w:?} does not use every variable exactly once")));
        }
        Ok(())
    }

    pub fn add_term(&mut self, c: CycloScalar, word: Word) -> Result<()> {
        self.check_word(&word)?;
        let c = c.embed(self.m)?;
        let e = self.terms.entry(word).or_insert_with(|| CycloScalar::zero(c.conductor()));
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, x| !x.is_zero());
        }
        Ok(())
    }

    pub fn vars(&self) -> &[StarVariable] {
        &self.vars
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Same polynomial with coefficients in Q(ζ_m′); needs m | m′.
    pub fn embed(&self, target: u32) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), c.embed(target)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(MultilinearPolynomial { vars: self.vars.clone(), m: target, terms })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &[usize]) -> CycloScalar {
        self.terms.get(w).cloned().unwrap_or_else(|| CycloScalar::zero(self.m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.vars.iter().position(|v| v.id == id)
    }

    pub fn var(&self, id: usize) -> Option<&StarVariable> {
        self.vars.iter().find(|v| v.id == id)
    }

    pub fn scaled(&self, c: &CycloScalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, x)| (w.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        MultilinearPolynomial { terms, ..self.clone() }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::Invalid("polynomials have different variables".into()));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone())?;
        }
        Ok(out)
    }

    /// The involution of the free algebra: words reversed, sign (−1)^(number
    /// of Z letters).
    pub fn star(&self) -> Self {
        let nz = self.vars.iter().filter(|v| v.kind == VarKind::Z).count();
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let rev: Word = w.iter().rev().cloned().collect();
                (rev, if nz % 2 == 1 { -c } else { c.clone() })
            })
            .collect();
        MultilinearPolynomial { terms, ..self.clone() }
    }

    /// Renames variables: the letter `set[i]` becomes `set[perm[i]]`.
    fn permuted(&self, set: &[usize], perm: &[usize]) -> BTreeMap<Word, CycloScalar> {
        let map: BTreeMap<usize, usize> = set.iter().zip(perm).map(|(&a, &p)| (a, set[p])).collect();
        self.terms
            .iter()
            .map(|(w, c)| (w.iter().map(|x| *map.get(x).unwrap_or(x)).collect(), c.clone()))
            .collect()
    }

    fn check_alternation_set(&self, set: &[usize]) -> Result<()> {
        let mut degs = BTreeSet::new();
        for id in set {
            let v = self.var(*id).ok_or_else(|| Error::Invalid(format!("unknown variable id {id}")))?;
            degs.insert(v.complete_degree());
        }
        if degs.len() > 1 {
            return Err(Error::MixedDegrees(format!("alternation set {set:?} mixes complete degrees")));
        }
        if set.iter().collect::<BTreeSet<_>>().len() != set.len() {
            return Err(Error::Invalid("alternation set repeats a variable".into()));
        }
        Ok(())
    }

    /// Σ_σ sign(σ) f(x_{σ(1)}, …, x_{σ(k)}, …) over the permutations of `set`.
    pub fn alternate(&self, set: &[usize]) -> Result<Self> {
        self.check_alternation_set(set)?;
        let mut out = Self::zero(self.vars.clone(), self.m)?;
        for (perm, sign) in permutations(set.len()) {
            for (w, c) in self.permuted(set, &perm) {
                out.add_term(if sign < 0 { -c } else { c }, w)?;
            }
        }
        Ok(out)
    }

    /// f(values), `values` indexed like [`Self::vars`].
    pub fn evaluate(&self, a: &GradedStarAlgebra, values: &[Element]) -> Result<Element> {
        if values.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(self.vars.len(), values.len()));
        }
        let pos: BTreeMap<usize, usize> = self.vars.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let mut out = a.zero();
        for (w, c) in &self.terms {
            let mut acc = values[pos[&w[0]]].clone();
            for x in &w[1..] {
                if is_zero_vec(&acc) {
                    break;
                }
                acc = a.mul(&acc, &values[pos[x]]);
            }
            for (o, x) in out.iter_mut().zip(&acc) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        Ok(out)
    }

    pub fn evaluate_counted(&self, a: &GradedStarAlgebra, values: &[Element], budget: &Budget) -> Result<Element> {
        budget.charge((self.terms.len() * self.vars.len().max(1)) as u64)?;
        self.evaluate(a, values)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format": js::FORMAT,
            "vars": self.vars.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|(w, c)| json!({ "coef": js::scalar_to_json(c), "word": w })).collect::<Vec<_>>(),
        })
    }

    /// Reads a polynomial document; errors if any term carries forms.
    pub fn from_json(v: &Value, g: &FiniteAbelianGroup, m: u32) -> Result<Self> {
        FormPolynomial::from_json(v, g, m)?
            .to_multilinear()
            .ok_or_else(|| parse_err("polynomial has form factors; a plain multilinear polynomial is expected"))
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let name = |id: &usize| self.var(*id).map(|v| v.name()).unwrap_or_default();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})·{}", w.iter().map(name).collect::<Vec<_>>().join("")))
            .collect();
        parts.join(" + ")
    }
}

/// A form factor of a term: f₁(u) or f₂(u, v) for sub-words u, v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormFactor {
    F1(Word),
    F2(Word, Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTerm {
    pub coef: CycloScalar,
    pub word: Word,
    pub forms: Vec<FormFactor>,
}

/// Multilinear polynomial whose terms carry trace-form factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPolynomial {
    vars: Vec<StarVariable>,
    m: u32,
    terms: Vec<FormTerm>,
}

impl FormPolynomial {
    pub fn new(vars: Vec<StarVariable>, m: u32, terms: Vec<FormTerm>) -> Result<Self> {
        check_vars(&vars)?;
        let mut ids: Vec<usize> = vars.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        for t in &terms {
            let mut used = t.word.clone();
            for f in &t.forms {
                match f {
                    FormFactor::F1(u) => {
                        if u.is_empty() {
                            return Err(Error::Invalid("empty form argument".into()));
                        }
                        used.extend(u);
                    }
                    FormFactor::F2(u, v) => {
                        if u.is_empty() || v.is_empty() {
                            return Err(Error::Invalid("empty form argument".into()));
                        }
                        used.extend(u);
                        used.extend(v);
                    }
                }
            }
            used.sort_unstable();
            if used != ids {
                return Err(Error::Invalid(format!("term {:?} does not use every variable exactly once", t.word)));
            }
        }
        let terms = terms
            .into_iter()
            .map(|t| Ok(FormTerm { coef: t.coef.embed(m)?, ..t }))
            .collect::<Result<Vec<_>>>()?;
        Ok(FormPolynomial { vars, m, terms })
    }

    pub fn vars(&self) -> &[StarVariable] {
        &self.vars
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn to_multilinear(&self) -> Option<MultilinearPolynomial> {
        if self.terms.iter().any(|t| !t.forms.is_empty()) {
            return None;
        }
        MultilinearPolynomial::from_terms(
            self.vars.clone(),
            self.m,
            self.terms.iter().map(|t| (t.coef.clone(), t.word.clone())).collect(),
        )
        .ok()
    }

    pub fn from_multilinear(f: &MultilinearPolynomial) -> Self {
        FormPolynomial {
            vars: f.vars.clone(),
            m: f.m,
            terms: f.terms.iter().map(|(w, c)| FormTerm { coef: c.clone(), word: w.clone(), forms: vec![] }).collect(),
        }
    }

    /// Value at `values`, with the forms supplied by the caller.  A term with
    /// an empty word contributes its form values times the unit.
    pub fn evaluate(
        &self,
        a: &GradedStarAlgebra,
        values: &[Element],
        f1: &dyn Fn(&Element) -> Result<CycloScalar>,
        f2: &dyn Fn(&Element, &Element) -> Result<CycloScalar>,
    ) -> Result<Element> {
        if values.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(self.vars.len(), values.len()));
        }
        let pos: BTreeMap<usize, usize> = self.vars.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
        let product = |w: &[usize]| -> Result<Element> {
            if w.is_empty() {
                return a.unit().cloned().ok_or_else(|| Error::Invalid("term without letters needs a unit".into()));
            }
            let mut acc = values[pos[&w[0]]].clone();
            for x in &w[1..] {
                acc = a.mul(&acc, &values[pos[x]]);
            }
            Ok(acc)
        };
        let mut out = a.zero();
        for t in &self.terms {
            let mut c = t.coef.clone();
            for f in &t.forms {
                let v = match f {
                    FormFactor::F1(u) => f1(&product(u)?)?,
                    FormFactor::F2(u, v) => f2(&product(u)?, &product(v)?)?,
                };
                c = &c * &v;
                if c.is_zero() {
                    break;
                }
            }
            if c.is_zero() {
                continue;
            }
            let p = product(&t.word)?;
            for (o, x) in out.iter_mut().zip(&p) {
                if !x.is_zero() {
                    *o += &(&c * x);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let forms = |t: &FormTerm| -> Vec<Value> {
            t.forms
                .iter()
                .map(|f| match f {
                    FormFactor::F1(u) => json!({ "f": "f1", "args": [u] }),
                    FormFactor::F2(u, v) => json!({ "f": "f2", "args": [u, v] }),
                })
                .collect()
        };
        json!({
            "format": js::FORMAT,
            "vars": self.vars.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|t| json!({
                "coef": js::scalar_to_json(&t.coef),
                "word": t.word,
                "forms": forms(t),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, g: &FiniteAbelianGroup, m: u32) -> Result<Self> {
        js::check_format(v)?;
        let vars = as_array(field(v, "vars")?, "vars")?
            .iter()
            .map(|x| StarVariable::from_json(x, g))
            .collect::<Result<Vec<_>>>()?;
        let word = |x: &Value| -> Result<Word> {
            as_array(x, "word")?.iter().map(|i| as_usize(i, "variable id")).collect()
        };
        let mut terms = Vec::new();
        for t in as_array(field(v, "terms")?, "terms")? {
            let coef = js::scalar_from_json(field(t, "coef")?, m)?;
            let w = word(field(t, "word")?)?;
            let mut forms = Vec::new();
            if let Some(fs) = t.get("forms") {
                for f in as_array(fs, "forms")? {
                    let args = as_array(field(f, "args")?, "form args")?;
                    let factor = match (field(f, "f")?.as_str(), args.len()) {
                        (Some("f1"), 1) => FormFactor::F1(word(&args[0])?),
                        (Some("f2"), 2) => FormFactor::F2(word(&args[0])?, word(&args[1])?),
                        _ => return Err(parse_err("form must be f1 with one argument or f2 with two")),
                    };
                    forms.push(factor);
                }
            }
            terms.push(FormTerm { coef, word: w, forms });
        }
        FormPolynomial::new(vars, m, terms).map_err(|e| parse_err(e.to_string()))
    }
}

/// A polynomial alternated over disjoint variable sets, kept unexpanded.
#[derive(Clone, Debug)]
pub struct AlternatedPolynomial {
    pub base: MultilinearPolynomial,
    pub sets: Vec<Vec<usize>>,
}

impl AlternatedPolynomial {
    pub fn new(base: MultilinearPolynomial, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &sets {
            base.check_alternation_set(s)?;
            for x in s {
                if !seen.insert(*x) {
                    return Err(Error::Invalid(format!("variable {x} lies in two alternation sets")));
                }
            }
        }
        Ok(AlternatedPolynomial { base, sets })
    }

    /// Number of base evaluations an evaluation costs.
    pub fn expansion_size(&self) -> u64 {
        self.sets.iter().map(|s| (1..=s.len() as u64).product::<u64>()).product()
    }

    /// Evaluates by summing the base over all combined permutations.
    pub fn evaluate(&self, a: &GradedStarAlgebra, values: &[Element], budget: &Budget) -> Result<Element> {
        let base = &self.base;
        if values.len() != base.vars.len() {
            return Err(Error::DimensionMismatch(base.vars.len(), values.len()));
        }
        let positions: Vec<Vec<usize>> =
            self.sets.iter().map(|s| s.iter().map(|id| base.position(*id).unwrap()).collect()).collect();
        let perms: Vec<Vec<(Vec<usize>, i64)>> = self.sets.iter().map(|s| permutations(s.len())).collect();
        let mut out = a.zero();
        let mut idx = vec![0usize; perms.len()];
        loop {
            let mut vals = values.to_vec();
            let mut sign = 1;
            for (t, &k) in idx.iter().enumerate() {
                let (p, s) = &perms[t][k];
                sign *= s;
                for (i, &pi) in p.iter().enumerate() {
                    vals[positions[t][i]] = values[positions[t][pi]].clone();
                }
            }
            let v = base.evaluate_counted(a, &vals, budget)?;
            for (o, x) in out.iter_mut().zip(&v) {
                if !x.is_zero() {
                    if sign > 0 {
                        *o += x;
                    } else {
                        *o -= x;
                    }
                }
            }
            // odometer
            let mut t = perms.len();
            loop {
                if t == 0 {
                    return Ok(out);
                }
                t -= 1;
                idx[t] += 1;
                if idx[t] < perms[t].len() {
                    break;
                }
                idx[t] = 0;
            }
        }
    }

    pub fn expand(&self, budget: &Budget) -> Result<MultilinearPolynomial> {
        budget.charge(self.expansion_size().saturating_mul(self.base.term_count() as u64))?;
        let mut f = self.base.clone();
        for s in &self.sets {
            f = f.alternate(s)?;
        }
        Ok(f)
    }
}

/// Outcome of an identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityVerdict {
    Yes,
    /// The first basis tuple (lexicographic) with a nonzero value.
    No { witness: Vec<Element>, value: Element },
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Yes)
    }
}

/// Echelon bases of A_θ^δ for the complete degrees of the variables.
pub(crate) fn variable_bases(a: &GradedStarAlgebra, vars: &[StarVariable]) -> Result<Vec<Vec<Element>>> {
    let mut cache: BTreeMap<CompleteDegree, Vec<Element>> = BTreeMap::new();
    vars.iter()
        .map(|v| {
            if !a.group().contains(&v.degree) {
                return Err(Error::Invalid(format!("degree {} of {} is not in the group", v.degree, v.name())));
            }
            let cd = v.complete_degree();
            Ok(cache.entry(cd.clone()).or_insert_with(|| a.component_basis(&cd)).clone())
        })
        .collect()
}

/// Calls `visit` on every index tuple in lexicographic order until it
/// returns false.  Returns false if stopped early.
pub(crate) fn for_each_tuple(sizes: &[usize], mut visit: impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    if sizes.iter().any(|&s| s == 0) {
        return Ok(true);
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        if !visit(&idx)? {
            return Ok(false);
        }
        let mut t = sizes.len();
        loop {
            if t == 0 {
                return Ok(true);
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < sizes[t] {
                break;
            }
            idx[t] = 0;
        }
    }
}

fn tuple_count(sizes: &[usize]) -> u64 {
    sizes.iter().fold(1u64, |acc, &s| acc.saturating_mul(s as u64))
}

/// Evaluates f on every tuple of homogeneous basis vectors of matching
/// complete degrees; by multilinearity this decides whether f is an
/// identity.
pub fn is_identity(a: &GradedStarAlgebra, f: &MultilinearPolynomial, budget: &Budget) -> Result<IdentityVerdict> {
    let bases = variable_bases(a, f.vars())?;
    let sizes: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let cost = tuple_count(&sizes).saturating_mul((f.term_count() * f.degree().max(1)) as u64);
    if cost > budget.limit().saturating_sub(budget.used()) {
        return Err(Error::ResourceCap(budget.limit()));
    }
    let mut found = None;
    for_each_tuple(&sizes, |idx| {
        let vals: Vec<Element> = idx.iter().enumerate().map(|(t, &i)| bases[t][i].clone()).collect();
        let v = f.evaluate_counted(a, &vals, budget)?;
        if is_zero_vec(&v) {
            Ok(true)
        } else {
            found = Some((vals, v));
            Ok(false)
        }
    })?;
    Ok(match found {
        None => IdentityVerdict::Yes,
        Some((witness, value)) => IdentityVerdict::No { witness, value },
    })
}

/// The multilinear identities of A in a fixed set of variables.
#[derive(Clone, Debug)]
pub struct IdentitySpace {
    /// dim Γ_n̄
    pub identities: usize,
    /// dim P_n̄/Γ_n̄
    pub quotient: usize,
    /// A basis of Γ_n̄.
    pub kernel: Vec<MultilinearPolynomial>,
}

/// Rank and nullity of the map from the n! monomials to their values on all
/// basis tuples.
pub fn identity_space_dimension(a: &GradedStarAlgebra, vars: &[StarVariable], budget: &Budget) -> Result<IdentitySpace> {
    check_vars(vars)?;
    let m = a.conductor();
    let n = vars.len();
    let bases = variable_bases(a, vars)?;
    let sizes: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let words: Vec<Word> = permutations(n).into_iter().map(|(p, _)| p.iter().map(|&i| vars[i].id).collect()).collect();
    let tuples = tuple_count(&sizes);
    let cost = tuples.saturating_mul(words.len() as u64).saturating_mul(n.max(1) as u64);
    budget.charge(cost)?;
    let dim = a.dim();
    let mut images: Vec<Element> = vec![Vec::new(); words.len()];
    for_each_tuple(&sizes, |idx| {
        for (w, img) in words.iter().zip(images.iter_mut()) {
            let mut acc: Option<Element> = None;
            for id in w {
                let p = vars.iter().position(|v| v.id == *id).unwrap();
                let b = &bases[p][idx[p]];
                acc = Some(match acc {
                    None => b.clone(),
                    Some(x) => a.mul(&x, b),
                });
            }
            img.extend(acc.unwrap_or_else(|| zero_vec(dim, m)));
        }
        Ok(true)
    })?;
    let n_out = images.first().map_or(0, |v| v.len());
    let ker = kernel(&images, n_out, m);
    let kernel_polys = ker
        .iter()
        .map(|c| {
            MultilinearPolynomial::from_terms(
                vars.to_vec(),
                m,
                c.iter().zip(&words).filter(|(x, _)| !x.is_zero()).map(|(x, w)| (x.clone(), w.clone())).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentitySpace { identities: ker.len(), quotient: words.len() - ker.len(), kernel: kernel_polys })
}
