//! B ⊕ (Y, Z) modulo the verbal ideal of given identities and the s-th
//! power of the ideal generated by the variables.
//!
//! Normal form: words b₀ x₁ b₁ ⋯ x_k b_k with 0 ≤ k < s, every x a graded
//! variable and every b either a basis letter of B or empty (the adjoined
//! unit).  A word with k = 0 must be a single B letter.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{GradedStarAlgebra, TableBuilder};
use crate::budget::Budget;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::identities::{for_each_tuple, variable_bases, MultilinearPolynomial, VarKind};
use crate::linalg::{is_zero_vec, Element, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// Basis element of B.
    B(usize),
    /// Variable number `index` (0-based, below q), of group element number
    /// `degree` in enumeration order.
    Var { kind: VarKind, index: usize, degree: usize },
}

/// A normal-form word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeRadicalWord(pub Vec<Letter>);

impl FreeRadicalWord {
    pub fn variable_count(&self) -> usize {
        self.0.iter().filter(|l| matches!(l, Letter::Var { .. })).count()
    }
}

struct WordLabel<'a>(&'a FreeRadicalWord, &'a GradedStarAlgebra);

impl fmt::Display for WordLabel<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elements = self.1.group().elements();
        let parts: Vec<String> = self
            .0
             .0
            .iter()
            .map(|l| match l {
                Letter::B(i) => self.1.label(*i).to_string(),
                Letter::Var { kind, index, degree } => {
                    let k = if *kind == VarKind::Y { "y" } else { "z" };
                    format!("{k}{}[{}]", index + 1, elements[*degree])
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// All normal-form words, B letters first, then by variable count.
pub fn free_radical_words(b: &GradedStarAlgebra, q: usize, s: usize) -> Vec<FreeRadicalWord> {
    let nb = b.dim();
    let ng = b.group().order() as usize;
    let vars: Vec<Letter> = (0..q)
        .flat_map(|index| {
            (0..ng).flat_map(move |degree| {
                [VarKind::Y, VarKind::Z].into_iter().map(move |kind| Letter::Var { kind, index, degree })
            })
        })
        .collect();
    let slots: Vec<Option<usize>> = std::iter::once(None).chain((0..nb).map(Some)).collect();
    let mut out: Vec<FreeRadicalWord> = (0..nb).map(|i| FreeRadicalWord(vec![Letter::B(i)])).collect();
    for k in 1..s.max(1) {
        // b₀ (x₁ b₁) ⋯ (x_k b_k)
        let mut sizes = vec![slots.len()];
        for _ in 0..k {
            sizes.push(vars.len());
            sizes.push(slots.len());
        }
        let _ = for_each_tuple(&sizes, |idx| {
            let mut w = Vec::with_capacity(2 * k + 1);
            for (t, &i) in idx.iter().enumerate() {
                if t % 2 == 1 {
                    w.push(vars[i]);
                } else if let Some(bi) = slots[i] {
                    w.push(Letter::B(bi));
                }
            }
            out.push(FreeRadicalWord(w));
            Ok(true)
        });
    }
    out
}

/// Number of normal-form words, without building them.
pub fn free_radical_word_count(b_dim: usize, group_order: usize, q: usize, s: usize) -> u128 {
    let nv = (2 * q * group_order) as u128;
    let slot = b_dim as u128 + 1;
    let mut total = b_dim as u128;
    for k in 1..s.max(1) as u32 {
        total = total.saturating_add(slot.saturating_pow(k + 1).saturating_mul(nv.saturating_pow(k)));
    }
    total
}

/// Builds the truncated algebra with free radical and, when identities are
/// supplied, divides by the ideal generated by their values on all
/// homogeneous spanning elements of matching complete degrees.
pub fn truncated_free_radical(
    b: &GradedStarAlgebra,
    q: usize,
    s: usize,
    identities: &[MultilinearPolynomial],
    budget: &Budget,
) -> Result<GradedStarAlgebra> {
    if s == 0 {
        return Err(Error::Invalid("truncation degree s must be at least 1".into()));
    }
    let g = b.group();
    let ng = g.order() as usize;
    let count = free_radical_word_count(b.dim(), ng, q, s);
    let n = u64::try_from(count).map_err(|_| Error::ResourceCap(budget.limit()))?;
    // The multiplication table has n² entries.
    budget.charge(n.saturating_mul(n))?;
    let words = free_radical_words(b, q, s);
    let index: HashMap<&FreeRadicalWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let m = b.conductor();
    let elements = g.elements();

    let degree_of = |w: &FreeRadicalWord| {
        w.0.iter().fold(g.identity(), |acc, l| match l {
            Letter::B(i) => g.add(&acc, b.degree(*i)),
            Letter::Var { degree, .. } => g.add(&acc, &elements[*degree]),
        })
    };
    let labels = words.iter().map(|w| WordLabel(w, b).to_string()).collect();
    let grading = words.iter().map(degree_of).collect();

    let product = |p: usize, r: usize| -> SparseVec {
        let (u, v) = (&words[p], &words[r]);
        if u.variable_count() + v.variable_count() >= s {
            return vec![];
        }
        let mut acc: Vec<(usize, CycloScalar)> = Vec::new();
        match (u.0.last(), v.0.first()) {
            (Some(Letter::B(i)), Some(Letter::B(j))) => {
                for (k, c) in b.product_of_basis(*i, *j) {
                    let mut w = u.0[..u.0.len() - 1].to_vec();
                    w.push(Letter::B(*k));
                    w.extend_from_slice(&v.0[1..]);
                    acc.push((index[&FreeRadicalWord(w)], c.clone()));
                }
            }
            _ => {
                let w: Vec<Letter> = u.0.iter().chain(&v.0).cloned().collect();
                acc.push((index[&FreeRadicalWord(w)], CycloScalar::one(m)));
            }
        }
        acc.sort_by_key(|(k, _)| *k);
        acc
    };

    let star = |p: usize| -> SparseVec {
        // Reverse, then expand the B letters through B's star.
        let mut partial: Vec<(Vec<Letter>, CycloScalar)> = vec![(Vec::new(), CycloScalar::one(m))];
        for l in words[p].0.iter().rev() {
            partial = match l {
                Letter::Var { kind, .. } => partial
                    .into_iter()
                    .map(|(mut w, c)| {
                        w.push(*l);
                        (w, if *kind == VarKind::Z { -c } else { c })
                    })
                    .collect(),
                Letter::B(i) => partial
                    .into_iter()
                    .flat_map(|(w, c)| {
                        b.star_of_basis(*i).iter().map(move |(k, x)| {
                            let mut w2 = w.clone();
                            w2.push(Letter::B(*k));
                            (w2, &c * x)
                        })
                    })
                    .collect(),
            };
        }
        let mut acc: Vec<(usize, CycloScalar)> =
            partial.into_iter().map(|(w, c)| (index[&FreeRadicalWord(w)], c)).collect();
        acc.sort_by_key(|(k, _)| *k);
        acc
    };

    let unit = if s == 1 { b.unit().cloned() } else { None };
    let builder = TableBuilder { group: g.clone(), conductor: m, labels, grading };
    let mut free = builder.build(product, star, unit)?;
    free = free.with_family(format!("R(q={q},s={s})"));
    if identities.is_empty() {
        return Ok(free);
    }

    let mut gens: Vec<Element> = Vec::new();
    for f in identities {
        let f = f.embed(m)?;
        let bases = variable_bases(&free, f.vars())?;
        for_each_tuple(&bases.iter().map(|x| x.len()).collect::<Vec<_>>(), |idx| {
            let vals: Vec<Element> = idx.iter().enumerate().map(|(t, &i)| bases[t][i].clone()).collect();
            let v = f.evaluate_counted(&free, &vals, budget)?;
            if !is_zero_vec(&v) {
                gens.push(v);
            }
            Ok(true)
        })?;
    }
    let ideal = free.ideal_closure(&gens);
    let (quotient, _) = free.quotient(&ideal)?;
    Ok(quotient.with_family(format!("R(q={q},s={s})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TableBuilder;
    use crate::groupkit::FiniteAbelianGroup;
    use crate::identities::StarVariable;
    use crate::linalg::unit_vec;

    fn field_over_z2() -> GradedStarAlgebra {
        let g = FiniteAbelianGroup::cyclic(2);
        TableBuilder { group: g.clone(), conductor: 2, labels: vec!["1".into()], grading: vec![g.identity()] }
            .build(|_, _| vec![(0, CycloScalar::one(2))], |_| vec![(0, CycloScalar::one(2))], Some(unit_vec(1, 0, 2)))
            .unwrap()
    }

    #[test]
    fn s1_returns_b() {
        let f = field_over_z2();
        let r = truncated_free_radical(&f, 3, 1, &[], &Budget::default()).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.unit(), f.unit());
    }

    #[test]
    fn word_count_for_f_q1_s2() {
        // 4 variables, each with an optional 1_B on both sides, plus B.
        let f = field_over_z2();
        let r = truncated_free_radical(&f, 1, 2, &[], &Budget::default()).unwrap();
        assert_eq!(r.dim(), 17);
        assert_eq!(free_radical_word_count(1, 2, 1, 2), 17);
        assert!(r.verify_axioms().is_empty());
    }

    #[test]
    fn s3_is_associative_and_star_closed() {
        let f = field_over_z2();
        let r = truncated_free_radical(&f, 1, 3, &[], &Budget::default()).unwrap();
        assert_eq!(r.dim() as u128, free_radical_word_count(1, 2, 1, 3));
        assert!(r.verify_axioms().is_empty());
    }

    #[test]
    fn commutator_identity_shrinks_the_algebra() {
        let f = field_over_z2();
        let g = f.group().clone();
        let e = g.identity();
        let c = MultilinearPolynomial::commutator(StarVariable::y(1, e.clone()), StarVariable::y(2, e), 2).unwrap();
        let r = truncated_free_radical(&f, 1, 2, &[c], &Budget::default()).unwrap();
        assert!(r.dim() < 17);
        assert!(r.verify_axioms().is_empty());
    }
}
