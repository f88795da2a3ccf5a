//! Fitting a Cayley–Hamilton type identity
//! 𝒦(x) = xⁿ + Σ α · x^{i₀} 𝔣₂(x^{i₁},x^{j₁}) ⋯ 𝔣₁(x^{k}) of degree n = 3t + 1
//! to a generic neutral element x = Σ λ_j u_j.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::trace::TraceForms;
use crate::budget::Budget;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::json as js;
use crate::linalg::{Echelon, SparseVec};
use crate::structure::VerifiedDecomposition;

/// Largest t = dim B accepted by [`fit_cayley_hamilton`].
pub const CH_DEFAULT_MAX_T: usize = 2;

/// A polynomial in commuting indeterminates λ₀, λ₁, … with cyclotomic
/// coefficients, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPoly {
    vars: usize,
    m: u32,
    terms: BTreeMap<Vec<u32>, CycloScalar>,
}

impl LambdaPoly {
    pub fn zero(vars: usize, m: u32) -> Self {
        LambdaPoly { vars, m, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: CycloScalar) -> Self {
        let mut p = Self::zero(vars, c.conductor());
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn variable(vars: usize, m: u32, j: usize) -> Self {
        let mut e = vec![0; vars];
        e[j] = 1;
        let mut p = Self::zero(vars, m);
        p.terms.insert(e, CycloScalar::one(m));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn add_scaled(&mut self, other: &LambdaPoly, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            let t = x * c;
            match self.terms.get_mut(e) {
                Some(y) => {
                    *y += &t;
                    if y.is_zero() {
                        self.terms.remove(e);
                    }
                }
                None => {
                    self.terms.insert(e.clone(), t);
                }
            }
        }
    }

    pub fn mul(&self, other: &LambdaPoly, budget: &Budget) -> Result<LambdaPoly> {
        budget.charge((self.terms.len() * other.terms.len()) as u64)?;
        let mut out = Self::zero(self.vars, self.m);
        for (e1, x) in &self.terms {
            for (e2, y) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let t = x * y;
                match out.terms.get_mut(&e) {
                    Some(z) => *z += &t,
                    None => {
                        out.terms.insert(e, t);
                    }
                }
            }
        }
        out.terms.retain(|_, x| !x.is_zero());
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coef": js::scalar_to_json(c) }))
                .collect(),
        )
    }
}

/// An element of A ⊗ F[λ], by standard coordinates.
pub type PolyElement = Vec<LambdaPoly>;

/// One monomial x^{x_power} · Π 𝔣₂(x^i, x^j) · Π 𝔣₁(x^k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChTerm {
    pub x_power: u32,
    pub f2: Vec<(u32, u32)>,
    pub f1: Vec<u32>,
}

impl ChTerm {
    fn weight(&self) -> u32 {
        self.x_power + self.f2.iter().map(|(i, j)| i + j).sum::<u32>() + self.f1.iter().sum::<u32>()
    }

    pub fn to_json(&self) -> Value {
        json!({ "x_power": self.x_power, "f2": self.f2, "f1": self.f1 })
    }
}

impl std::fmt::Display for ChTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{}", self.x_power)?;
        for (i, j) in &self.f2 {
            write!(f, " f2(x^{i},x^{j})")?;
        }
        for k in &self.f1 {
            write!(f, " f1(x^{k})")?;
        }
        Ok(())
    }
}

/// A solved identity and its nilpotency certificate.
#[derive(Clone, Debug)]
pub struct ChFit {
    pub degree: u32,
    pub t: usize,
    pub nd: usize,
    /// Terms other than the leading xⁿ with nonzero coefficient.
    pub terms: Vec<(ChTerm, CycloScalar)>,
    pub unknowns: usize,
    pub equations: usize,
    /// Number of λ indeterminates (dim A_𝔢).
    pub indeterminates: usize,
    /// 𝒦(x)^{nd} expanded to zero.
    pub verified: bool,
}

impl ChFit {
    pub fn to_json(&self) -> Value {
        json!({
            "format": js::FORMAT,
            "degree": self.degree,
            "t": self.t,
            "nd": self.nd,
            "indeterminates": self.indeterminates,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "terms": self.terms.iter().map(|(t, a)| {
                let mut v = t.to_json();
                v["alpha"] = js::scalar_to_json(a);
                v["display"] = json!(t.to_string());
                v
            }).collect::<Vec<_>>(),
            "verified": self.verified,
        })
    }
}

/// The form factors, as (is_f2, i, j) with j unused for 𝔣₁.
fn parts(max_weight: u32) -> Vec<(bool, u32, u32)> {
    let mut out: Vec<(bool, u32, u32)> = (1..=max_weight).map(|k| (false, k, 0)).collect();
    for i in 1..=max_weight {
        for j in i..=max_weight - i {
            out.push((true, i, j));
        }
    }
    out
}

/// Multisets of parts of total weight `w`, as nondecreasing index lists.
fn multisets(parts: &[(bool, u32, u32)], w: u32) -> Vec<Vec<usize>> {
    fn rec(parts: &[(bool, u32, u32)], from: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in from..parts.len() {
            let (_, i, j) = parts[k];
            let wk = i + j;
            if wk <= left {
                cur.push(k);
                rec(parts, k, left - wk, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(parts, 0, w, &mut Vec::new(), &mut out);
    out
}

fn all_terms(n: u32) -> Vec<ChTerm> {
    let ps = parts(n - 1);
    let mut out = Vec::new();
    for i0 in (1..n).rev() {
        for ms in multisets(&ps, n - i0) {
            let mut term = ChTerm { x_power: i0, f2: Vec::new(), f1: Vec::new() };
            for k in ms {
                match ps[k] {
                    (false, i, _) => term.f1.push(i),
                    (true, i, j) => term.f2.push((i, j)),
                }
            }
            debug_assert_eq!(term.weight(), n);
            out.push(term);
        }
    }
    out
}

/// [`fit_cayley_hamilton_with_cap`] with t ≤ [`CH_DEFAULT_MAX_T`].
pub fn fit_cayley_hamilton(dec: &VerifiedDecomposition, budget: &Budget) -> Result<ChFit> {
    fit_cayley_hamilton_with_cap(dec, CH_DEFAULT_MAX_T, budget)
}

/// Solves for coefficients making the semisimple part of 𝒦(x) vanish
/// identically in λ (free unknowns set to zero), then checks that
/// 𝒦(x)^{nd} expands to zero.
pub fn fit_cayley_hamilton_with_cap(dec: &VerifiedDecomposition, max_t: usize, budget: &Budget) -> Result<ChFit> {
    let a = dec.algebra();
    let (n_dim, m, t, nd) = (a.dim(), a.conductor(), dec.t(), dec.nd());
    if t > max_t {
        return Err(Error::SizeCap(format!("Cayley-Hamilton fit with dim B = {t} above the cap {max_t}")));
    }
    let e = a.group().identity();
    let neutral: Vec<_> = dec.elementary().into_iter().filter(|x| x.cd.degree == e).collect();
    if neutral.is_empty() {
        return Err(Error::Invalid("the neutral component is zero".into()));
    }
    let vars = neutral.len();
    let n = (3 * t + 1) as u32;

    // x = Σ λ_j u_j.
    let mut x: PolyElement = vec![LambdaPoly::zero(vars, m); n_dim];
    for (j, u) in neutral.iter().enumerate() {
        let lj = LambdaPoly::variable(vars, m, j);
        for (i, c) in u.vector.iter().enumerate() {
            x[i].add_scaled(&lj, c);
        }
    }
    let mul = |p: &PolyElement, q: &PolyElement| -> Result<PolyElement> {
        let mut out = vec![LambdaPoly::zero(vars, m); n_dim];
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, qj) in q.iter().enumerate() {
                if qj.is_zero() {
                    continue;
                }
                let prod = a.product_of_basis(i, j);
                if prod.is_empty() {
                    continue;
                }
                let pq = pi.mul(qj, budget)?;
                for (k, c) in prod {
                    out[*k].add_scaled(&pq, c);
                }
            }
        }
        Ok(out)
    };
    let mut powers: Vec<PolyElement> = vec![Vec::new(), x.clone()];
    for _ in 2..=n {
        let next = mul(powers.last().unwrap(), &x)?;
        powers.push(next);
    }

    let forms = TraceForms::new(dec)?;
    let phi1 = forms.f1_on_basis();
    let phi2 = forms.f2_on_basis();
    let mut f1_cache: BTreeMap<u32, LambdaPoly> = BTreeMap::new();
    let mut f2_cache: BTreeMap<(u32, u32), LambdaPoly> = BTreeMap::new();
    for i in 1..n {
        let mut p = LambdaPoly::zero(vars, m);
        for (k, c) in powers[i as usize].iter().enumerate() {
            p.add_scaled(c, &phi1[k]);
        }
        f1_cache.insert(i, p);
    }
    for i in 1..n {
        for j in i..n - i {
            let mut p = LambdaPoly::zero(vars, m);
            for (k, ck) in powers[i as usize].iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                // Σ_l c_l φ₂(k, l), then times c_k.
                let mut inner = LambdaPoly::zero(vars, m);
                for (l, cl) in powers[j as usize].iter().enumerate() {
                    inner.add_scaled(cl, &phi2[k][l]);
                }
                if !inner.is_zero() {
                    p.add_scaled(&ck.mul(&inner, budget)?, &CycloScalar::one(m));
                }
            }
            f2_cache.insert((i, j), p);
        }
    }

    // Semisimple coordinates of each standard basis vector and of each power.
    let coords = (0..n_dim).map(|i| dec.semisimple_coords(&a.basis_vector(i))).collect::<Result<Vec<_>>>()?;
    let semisimple = |p: &PolyElement| -> Vec<LambdaPoly> {
        (0..t)
            .map(|d| {
                let mut q = LambdaPoly::zero(vars, m);
                for (i, c) in p.iter().enumerate() {
                    q.add_scaled(c, &coords[i][d]);
                }
                q
            })
            .collect()
    };
    let ss_powers: Vec<Vec<LambdaPoly>> = powers.iter().map(|p| if p.is_empty() { Vec::new() } else { semisimple(p) }).collect();

    let terms = all_terms(n);
    let scalar_of = |term: &ChTerm| -> Result<LambdaPoly> {
        let mut s = LambdaPoly::constant(vars, CycloScalar::one(m));
        for ij in &term.f2 {
            s = s.mul(&f2_cache[ij], budget)?;
        }
        for k in &term.f1 {
            s = s.mul(&f1_cache[k], budget)?;
        }
        Ok(s)
    };
    let scalars = terms.iter().map(scalar_of).collect::<Result<Vec<_>>>()?;

    // Equation rows keyed by (D coordinate, λ monomial).
    let rhs = terms.len();
    let mut rows: BTreeMap<(usize, Vec<u32>), BTreeMap<usize, CycloScalar>> = BTreeMap::new();
    let mut put = |col: usize, d: usize, poly: &LambdaPoly, negate: bool| {
        for (e, c) in poly.terms() {
            let entry = rows.entry((d, e.clone())).or_default();
            let v = if negate { -c } else { c.clone() };
            match entry.get_mut(&col) {
                Some(x) => *x += &v,
                None => {
                    entry.insert(col, v);
                }
            }
        }
    };
    for d in 0..t {
        put(rhs, d, &ss_powers[n as usize][d], true);
    }
    for (col, (term, s)) in terms.iter().zip(&scalars).enumerate() {
        if s.is_zero() {
            continue;
        }
        for d in 0..t {
            let v = ss_powers[term.x_power as usize][d].mul(s, budget)?;
            put(col, d, &v, false);
        }
    }
    let equations = rows.len();
    let mut ech = Echelon::new(terms.len() + 1, m);
    for row in rows.into_values() {
        let sparse: SparseVec = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if !sparse.is_empty() {
            budget.charge((sparse.len() * (ech.rank() + 1)) as u64)?;
            ech.insert(&sparse);
        }
    }
    if ech.pivot_columns().contains(&rhs) {
        return Err(Error::NoSolution(format!("the semisimple part of a degree {n} polynomial cannot vanish")));
    }
    let mut alpha = vec![CycloScalar::zero(m); terms.len()];
    for (p, row) in ech.pivot_columns().into_iter().zip(ech.sorted_rows()) {
        if let Some((_, c)) = row.iter().find(|(k, _)| *k == rhs) {
            alpha[p] = c.clone();
        }
    }

    // 𝒦(x) and its nd-th power.
    let mut k = powers[n as usize].clone();
    for ((term, s), al) in terms.iter().zip(&scalars).zip(&alpha) {
        if al.is_zero() {
            continue;
        }
        for (i, c) in powers[term.x_power as usize].iter().enumerate() {
            if !c.is_zero() {
                k[i].add_scaled(&c.mul(s, budget)?, al);
            }
        }
    }
    let mut power = k.clone();
    for _ in 1..nd {
        power = mul(&power, &k)?;
    }
    let verified = power.iter().all(|p| p.is_zero());

    Ok(ChFit {
        degree: n,
        t,
        nd,
        terms: terms.into_iter().zip(alpha).filter(|(_, a)| !a.is_zero()).collect(),
        unknowns: rhs,
        equations,
        indeterminates: vars,
        verified,
    })
}
