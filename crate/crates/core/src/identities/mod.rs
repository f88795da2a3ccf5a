//! Graded *-polynomials and the identity machinery built on them.

mod ch;
mod exact;
mod polynomial;
mod trace;
mod witness;

pub use ch::{fit_cayley_hamilton, fit_cayley_hamilton_with_cap, ChFit, ChTerm, LambdaPoly, PolyElement, CH_DEFAULT_MAX_T};
pub use exact::{is_exact, ExactnessVerdict};
pub use trace::{
    check_trace_identities, trace_forms, trace_test_polynomial, TraceCounterexample, TraceForms, TraceReport,
    TraceTestPolynomial,
};
pub use witness::{beta_lower_bound, kemer_witness, KemerWitness, SlotRole, WITNESS_MAX_MU, WITNESS_MAX_T};
pub use polynomial::{
    identity_space_dimension, is_identity, multidegree_variables, AlternatedPolynomial, FormFactor,
    FormPolynomial, FormTerm, IdentitySpace, IdentityVerdict, MultilinearPolynomial, StarVariable, VarKind, Word,
};
pub(crate) use polynomial::{for_each_tuple, variable_bases};

/// All permutations of 0..n in lexicographic order, with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], (vec![0, 1, 2], 1));
        assert_eq!(p[1], (vec![0, 2, 1], -1));
        assert_eq!(p.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(permutations(0), vec![(vec![], 1)]);
    }
}
