//! Exact polynomials: vanishing on every thin or incomplete elementary
//! evaluation.

use std::collections::BTreeSet;

use super::polynomial::{for_each_tuple, MultilinearPolynomial};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Element};
use crate::structure::{Elementary, VerifiedDecomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessVerdict {
    Exact,
    /// The first offending evaluation in lexicographic order over D ∪ U.
    NotExact { evaluation: Vec<Elementary>, value: Element, thin: bool, incomplete: bool },
}

impl ExactnessVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ExactnessVerdict::Exact)
    }
}

/// Evaluates f on every tuple from D ∪ U of matching complete degrees that
/// has fewer than nd − 1 radical entries or misses some component.
pub fn is_exact(dec: &VerifiedDecomposition, f: &MultilinearPolynomial, budget: &Budget) -> Result<ExactnessVerdict> {
    let a = dec.algebra();
    let f = f.embed(a.conductor().max(f.conductor()))?;
    if f.conductor() != a.conductor() {
        return Err(Error::GroupMismatch(format!("polynomial over Q(ζ_{}) for an algebra over Q(ζ_{})", f.conductor(), a.conductor())));
    }
    let p = dec.p();
    let lists: Vec<Vec<Elementary>> = f.vars().iter().map(|v| dec.elementary_of(&v.complete_degree())).collect();
    let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
    let tuples = sizes.iter().fold(1u64, |acc, &s| acc.saturating_mul(s as u64));
    let cost = tuples.saturating_mul((f.term_count() * f.degree().max(1)) as u64);
    if cost > budget.limit().saturating_sub(budget.used()) {
        return Err(Error::ResourceCap(budget.limit()));
    }
    let mut found = None;
    for_each_tuple(&sizes, |idx| {
        let chosen: Vec<&Elementary> = idx.iter().enumerate().map(|(t, &i)| &lists[t][i]).collect();
        let radicals = chosen.iter().filter(|e| e.is_radical()).count();
        let thin = radicals + 1 < dec.nd();
        let touched: BTreeSet<usize> = chosen.iter().flat_map(|e| e.touched(p)).collect();
        let incomplete = touched.len() < p;
        if !thin && !incomplete {
            return Ok(true);
        }
        let vals: Vec<Element> = chosen.iter().map(|e| e.vector.clone()).collect();
        let v = f.evaluate_counted(a, &vals, budget)?;
        if is_zero_vec(&v) {
            return Ok(true);
        }
        found = Some(ExactnessVerdict::NotExact {
            evaluation: chosen.into_iter().cloned().collect(),
            value: v,
            thin,
            incomplete,
        });
        Ok(false)
    })?;
    Ok(found.unwrap_or(ExactnessVerdict::Exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::upper_triangular;
    use crate::identities::StarVariable;
    use crate::structure::{canonical_decomposition, verify_decomposition};

    fn ut2() -> VerifiedDecomposition {
        let built = upper_triangular(2).unwrap();
        let data = canonical_decomposition(&built).unwrap();
        verify_decomposition(&built.algebra, &data, 0, &Budget::default()).unwrap().decomposition.unwrap()
    }

    #[test]
    fn commutator_is_exact_on_ut2() {
        let dec = ut2();
        let e = dec.algebra().group().identity();
        let c = MultilinearPolynomial::commutator(StarVariable::y(1, e.clone()), StarVariable::y(2, e), 2).unwrap();
        assert!(is_exact(&dec, &c, &Budget::default()).unwrap().holds());
    }

    #[test]
    fn single_variable_is_not_exact_on_ut2() {
        let dec = ut2();
        let e = dec.algebra().group().identity();
        let f = MultilinearPolynomial::monomial(vec![StarVariable::y(1, e)], 2, vec![1]).unwrap();
        match is_exact(&dec, &f, &Budget::default()).unwrap() {
            ExactnessVerdict::NotExact { evaluation, thin, .. } => {
                assert!(thin);
                assert_eq!(evaluation[0].vector, dec.algebra().unit().unwrap().clone());
            }
            v => panic!("{v:?}"),
        }
    }
}
