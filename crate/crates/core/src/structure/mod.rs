//! Radical, nilpotency, simplicity, elementary decompositions and the
//! numeric parameters read off them.

mod decomposition;
mod parameters;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedStarAlgebra;
use crate::budget::Budget;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::linalg::{kernel, to_dense, to_sparse, Echelon, Element, SparseVec, Subspace};

pub use decomposition::{
    canonical_decomposition, verify_decomposition, ComponentData, DElement, DecompositionCheck, DecompositionData,
    Elementary, ElementaryKind, UElement, VerifiedDecomposition,
};
pub(crate) use parameters::diagonal_unit;
pub use parameters::{gi_parameters, parameters_from_radical, reduced_product_witness, GiParameters, ReducedWitness};

/// Number of pseudo-random vectors spun after the basis vectors.
pub const SPIN_VECTORS: usize = 32;

/// Jacobson radical by the trace criterion: x is in the radical iff
/// Tr(L_{xy}) = 0 for every y of the unital hull A ⊕ F·1.
pub fn jacobson_radical(a: &GradedStarAlgebra) -> Subspace {
    let n = a.dim();
    let m = a.conductor();
    let traces: Vec<CycloScalar> = (0..n).map(|k| a.left_trace(&a.basis_vector(k))).collect();
    // Row i: (Tr L_{b_i b_0}, …, Tr L_{b_i b_{n−1}}, Tr L_{b_i}).
    let images: Vec<Element> = (0..n)
        .map(|i| {
            let mut row: Element = (0..n)
                .map(|j| {
                    let mut t = CycloScalar::zero(m);
                    for (k, c) in a.product_of_basis(i, j) {
                        t += &(c * &traces[*k]);
                    }
                    t
                })
                .collect();
            row.push(traces[i].clone());
            row
        })
        .collect();
    Subspace::spanned_by(n, m, &kernel(&images, n + 1, m))
}

/// Smallest s with J^s = 0.  Errors when the powers stabilize at a nonzero
/// subspace.
pub fn nilpotency_degree(a: &GradedStarAlgebra, j: &Subspace) -> Result<usize> {
    if j.is_zero() {
        return Ok(1);
    }
    let mut power = j.clone();
    let mut s = 1;
    loop {
        let next = a.product_space(&power, j);
        s += 1;
        if next.is_zero() {
            return Ok(s);
        }
        if next.dim() >= power.dim() {
            return Err(Error::NotNilpotent);
        }
        power = next;
    }
}

/// Outcome of the simplicity test.
#[derive(Clone, Debug)]
pub enum SimplicityVerdict {
    /// The operators generate all of End(A): no invariant subspace exists.
    Simple { burnside_dim: usize },
    /// A proper nonzero graded star-closed ideal.
    NotSimple { witness: Subspace },
    /// Neither a certificate nor an ideal was found.
    Inconclusive { burnside_dim: usize },
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::Simple { .. })
    }
}

/// Images of `v` under the normal forms L_a ∘ R_b ∘ π_θ ∘ (id or star), with
/// a, b basis elements or the identity.  Their span is the operator algebra
/// generated by left and right multiplications, projections and the star,
/// because these normal forms are closed under composition.
fn for_each_operator_image(
    a: &GradedStarAlgebra,
    v: &SparseVec,
    budget: &Budget,
    mut visit: impl FnMut(SparseVec) -> bool,
) -> Result<()> {
    let n = a.dim();
    let starred = a.star_sparse(v);
    for s in [v, &starred] {
        for theta in a.group().elements() {
            let proj: SparseVec = s.iter().filter(|(k, _)| a.degree(*k) == &theta).cloned().collect();
            if proj.is_empty() {
                continue;
            }
            for b in std::iter::once(None).chain((0..n).map(Some)) {
                let mid = match b {
                    None => proj.clone(),
                    Some(b) => a.mul_sparse(&proj, &vec![(b, CycloScalar::one(a.conductor()))]),
                };
                if mid.is_empty() {
                    continue;
                }
                for l in std::iter::once(None).chain((0..n).map(Some)) {
                    budget.charge(n as u64)?;
                    let out = match l {
                        None => mid.clone(),
                        Some(l) => a.mul_sparse(&vec![(l, CycloScalar::one(a.conductor()))], &mid),
                    };
                    if !out.is_empty() && !visit(out) {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Dimension of the operator algebra, stopping early at (dim A)².
fn burnside_dimension(a: &GradedStarAlgebra, budget: &Budget) -> Result<usize> {
    let n = a.dim();
    let m = a.conductor();
    let starred: Vec<SparseVec> = (0..n).map(|j| a.star_of_basis(j).clone()).collect();
    let mut ech = Echelon::new(n * n, m);
    let one = CycloScalar::one(m);
    for star in [false, true] {
        for theta in a.group().elements() {
            let base: Vec<SparseVec> = (0..n)
                .map(|j| {
                    let s = if star { starred[j].clone() } else { vec![(j, one.clone())] };
                    s.into_iter().filter(|(k, _)| a.degree(*k) == &theta).collect()
                })
                .collect();
            if base.iter().all(|c| c.is_empty()) {
                continue;
            }
            for b in std::iter::once(None).chain((0..n).map(Some)) {
                let mid: Vec<SparseVec> = match b {
                    None => base.clone(),
                    Some(b) => base.iter().map(|c| a.mul_sparse(c, &vec![(b, one.clone())])).collect(),
                };
                if mid.iter().all(|c| c.is_empty()) {
                    continue;
                }
                for l in std::iter::once(None).chain((0..n).map(Some)) {
                    budget.charge((n * n) as u64)?;
                    let cols: Vec<SparseVec> = match l {
                        None => mid.clone(),
                        Some(l) => mid.iter().map(|c| a.mul_sparse(&vec![(l, one.clone())], c)).collect(),
                    };
                    let flat: SparseVec = cols
                        .into_iter()
                        .enumerate()
                        .flat_map(|(j, c)| c.into_iter().map(move |(i, x)| (j * n + i, x)))
                        .collect();
                    if !flat.is_empty() {
                        ech.insert(&flat);
                        if ech.is_full() {
                            return Ok(n * n);
                        }
                    }
                }
            }
        }
    }
    Ok(ech.rank())
}

/// The invariant subspace generated by `v`.
fn spin(a: &GradedStarAlgebra, v: &Element, budget: &Budget) -> Result<Subspace> {
    let n = a.dim();
    let mut s = Subspace::zero(n, a.conductor());
    for_each_operator_image(a, &to_sparse(v), budget, |w| {
        s.insert(&to_dense(&w, n, a.conductor()));
        s.dim() < n
    })?;
    Ok(s)
}

/// Decides whether A has no proper nonzero graded star-closed ideal.
/// Burnside's theorem certifies simplicity when the operators span
/// End(A); otherwise spinning the basis vectors and [`SPIN_VECTORS`]
/// seeded random vectors looks for an invariant subspace.
pub fn is_star_graded_simple(a: &GradedStarAlgebra, seed: u64, budget: &Budget) -> Result<SimplicityVerdict> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::Invalid("the zero algebra has no simplicity verdict".into()));
    }
    let burnside_dim = burnside_dimension(a, budget)?;
    if burnside_dim == n * n {
        return Ok(SimplicityVerdict::Simple { burnside_dim });
    }
    let m = a.conductor();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let randoms = (0..SPIN_VECTORS).map(|_| (0..n).map(|_| CycloScalar::from_int(m, rng.gen_range(-5..=5))).collect());
    for v in (0..n).map(|i| a.basis_vector(i)).chain(randoms) {
        let s = spin(a, &v, budget)?;
        if !s.is_zero() && s.dim() < n {
            return Ok(SimplicityVerdict::NotSimple { witness: s });
        }
    }
    Ok(SimplicityVerdict::Inconclusive { burnside_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{exchange_double, matrix_twisted, upper_triangular, InvolutionChoice};
    use crate::groupkit::{FiniteAbelianGroup, TwoCocycle};

    fn m2_transpose() -> GradedStarAlgebra {
        let g = FiniteAbelianGroup::trivial();
        let z = TwoCocycle::trivial(vec![g.identity()], 1);
        matrix_twisted(2, &g, &z, &[g.identity(), g.identity()], &InvolutionChoice::TransposeFamily(1)).unwrap()
    }

    /// Strictly upper triangular part of UT_n, by label.
    fn strictly_upper(a: &GradedStarAlgebra) -> Subspace {
        let rows: Vec<Element> = (0..a.dim())
            .filter(|&i| {
                let l = a.label(i).as_bytes();
                l[1] != l[2]
            })
            .map(|i| a.basis_vector(i))
            .collect();
        Subspace::spanned_by(a.dim(), a.conductor(), &rows)
    }

    #[test]
    fn radical_of_upper_triangular() {
        for n in 1..=3 {
            let a = upper_triangular(n).unwrap().algebra;
            let j = jacobson_radical(&a);
            assert_eq!(j, strictly_upper(&a));
            assert_eq!(nilpotency_degree(&a, &j).unwrap(), n);
        }
    }

    #[test]
    fn radical_of_simple_algebra_is_zero() {
        assert!(jacobson_radical(&m2_transpose()).is_zero());
    }

    #[test]
    fn whole_algebra_is_not_nilpotent() {
        let a = m2_transpose();
        assert_eq!(nilpotency_degree(&a, &Subspace::full(4, 1)), Err(Error::NotNilpotent));
    }

    #[test]
    fn ut2_is_not_simple() {
        let a = upper_triangular(2).unwrap().algebra;
        match is_star_graded_simple(&a, 0, &Budget::default()).unwrap() {
            SimplicityVerdict::NotSimple { witness } => {
                assert_eq!(witness, Subspace::spanned_by(3, 2, &[a.basis_vector(1)]))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exchange_double_of_the_field_is_simple() {
        let g = FiniteAbelianGroup::trivial();
        let z = TwoCocycle::trivial(vec![g.identity()], 1);
        let f = matrix_twisted(1, &g, &z, &[g.identity()], &InvolutionChoice::None).unwrap();
        let d = exchange_double(&f).unwrap();
        assert!(matches!(
            is_star_graded_simple(&d, 0, &Budget::default()).unwrap(),
            SimplicityVerdict::Simple { burnside_dim: 4 }
        ));
    }
}
