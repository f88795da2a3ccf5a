//! dims_gi, nd and dim J, and the search for a nonzero product
//! e_{σ(1)} r₁ e_{σ(2)} ⋯ r_{p−1} e_{σ(p)} of diagonal units and radical
//! elements.

use serde_json::{json, Value};

use super::decomposition::symmetric_unit;
use super::{jacobson_radical, nilpotency_degree, VerifiedDecomposition};
use crate::algebra::GradedStarAlgebra;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groupkit::CompleteDegree;
use crate::identities::permutations;
use crate::json as js;
use crate::linalg::{is_zero_vec, Element};

/// (dims_gi; nd; dim J).  The derived ordering compares dims_gi
/// lexicographically, then nd, then dim J.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GiParameters {
    pub dims_gi: Vec<usize>,
    pub nd: usize,
    pub dim_j: usize,
}

impl GiParameters {
    pub fn to_json(&self) -> Value {
        json!({ "format": js::FORMAT, "dims_gi": self.dims_gi, "nd": self.nd, "dimJ": self.dim_j })
    }
}

/// Counts of D elements per complete degree, in tuple order.
pub fn gi_parameters(dec: &VerifiedDecomposition) -> GiParameters {
    let g = dec.algebra().group();
    let mut dims = vec![0; 2 * g.order() as usize];
    for c in &dec.data().components {
        for d in &c.basis {
            dims[d.cd.slot(g)] += 1;
        }
    }
    GiParameters { dims_gi: dims, nd: dec.nd(), dim_j: dec.radical().dim() }
}

/// The same parameters without a decomposition: dims_gi is read off the
/// quotient A/J, which is isomorphic to any semisimple complement.
pub fn parameters_from_radical(a: &GradedStarAlgebra) -> Result<GiParameters> {
    let j = jacobson_radical(a);
    let nd = nilpotency_degree(a, &j)?;
    let (q, _) = a.quotient(&j)?;
    let dims_gi = if q.dim() == 0 { vec![0; 2 * a.group().order() as usize] } else { q.component_dims() };
    debug_assert_eq!(dims_gi.len(), CompleteDegree::all(a.group()).len());
    Ok(GiParameters { dims_gi, nd, dim_j: j.dim() })
}

/// A nonzero e^{(𝔢)}_{σ(1),(s₁s₁)} r₁ ⋯ r_{p−1} e^{(𝔢)}_{σ(p),(s_p s_p)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWitness {
    /// Component order.
    pub sigma: Vec<usize>,
    /// Diagonal index s for each position of σ.
    pub diagonal: Vec<usize>,
    /// Indices into the radical basis U.
    pub chain: Vec<usize>,
    pub a: Element,
}

impl ReducedWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.sigma,
            "diagonal": self.diagonal,
            "chain": self.chain,
            "a": js::vector_to_json(&self.a),
        })
    }
}

/// Diagonal unit e^{(𝔢)}_{l,(ss)}.
pub(crate) fn diagonal_unit(dec: &VerifiedDecomposition, l: usize, s: usize) -> Result<Element> {
    let e = dec.algebra().group().identity();
    let model = dec.model(l)?;
    model
        .unit(s, s, &e)
        .map(symmetric_unit)
        .ok_or_else(|| Error::DecompositionMismatch(format!("component {l} lacks the unit ({s},{s})")))
}

/// First nonzero product in the order: σ lexicographic, then for each
/// position the diagonal index, then the radical element joining it to the
/// next position.
pub fn reduced_product_witness(dec: &VerifiedDecomposition, budget: &Budget) -> Result<Option<ReducedWitness>> {
    let p = dec.p();
    if p == 0 {
        return Ok(None);
    }
    let a = dec.algebra();
    let n = a.dim() as u64;
    let us: Vec<Element> = dec.data().radical.iter().map(|u| u.vector.clone()).collect();
    let mut units: Vec<Vec<Element>> = Vec::with_capacity(p);
    for l in 0..p {
        let k = dec.model(l)?.k;
        units.push((0..k).map(|s| diagonal_unit(dec, l, s)).collect::<Result<_>>()?);
    }

    struct Search<'a> {
        a: &'a GradedStarAlgebra,
        us: &'a [Element],
        units: &'a [Vec<Element>],
        sigma: Vec<usize>,
        diagonal: Vec<usize>,
        chain: Vec<usize>,
        budget: &'a Budget,
        cost: u64,
    }
    impl Search<'_> {
        fn run(&mut self, pos: usize, prefix: Option<Element>) -> Result<Option<Element>> {
            let l = self.sigma[pos];
            for s in 0..self.units[l].len() {
                let joins: Vec<Option<usize>> =
                    if pos == 0 { vec![None] } else { (0..self.us.len()).map(Some).collect() };
                for r in joins {
                    self.budget.charge(self.cost)?;
                    let value = match (&prefix, r) {
                        (None, _) => self.units[l][s].clone(),
                        (Some(x), Some(r)) => self.a.mul(&self.a.mul(x, &self.us[r]), &self.units[l][s]),
                        (Some(_), None) => unreachable!(),
                    };
                    if is_zero_vec(&value) {
                        continue;
                    }
                    self.diagonal.push(s);
                    if let Some(r) = r {
                        self.chain.push(r);
                    }
                    if pos + 1 == self.sigma.len() {
                        return Ok(Some(value));
                    }
                    if let Some(found) = self.run(pos + 1, Some(value))? {
                        return Ok(Some(found));
                    }
                    self.diagonal.pop();
                    if r.is_some() {
                        self.chain.pop();
                    }
                }
            }
            Ok(None)
        }
    }

    for (sigma, _) in permutations(p) {
        let mut search = Search {
            a,
            us: &us,
            units: &units,
            sigma: sigma.clone(),
            diagonal: Vec::new(),
            chain: Vec::new(),
            budget,
            cost: 2 * n * n,
        };
        if let Some(value) = search.run(0, None)? {
            return Ok(Some(ReducedWitness { sigma, diagonal: search.diagonal, chain: search.chain, a: value }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        direct_product_with_model, matrix_twisted_with_model, upper_triangular, InvolutionChoice, Modelled,
    };
    use crate::groupkit::{FiniteAbelianGroup, TwoCocycle};
    use crate::structure::{canonical_decomposition, verify_decomposition};

    fn verified(built: &Modelled) -> VerifiedDecomposition {
        let data = canonical_decomposition(built).unwrap();
        verify_decomposition(&built.algebra, &data, 0, &Budget::default()).unwrap().decomposition.unwrap()
    }

    fn field_z2() -> Modelled {
        let g = FiniteAbelianGroup::cyclic(2);
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        matrix_twisted_with_model(1, &g, &z, &[g.identity()], &InvolutionChoice::TransposeFamily(1)).unwrap()
    }

    #[test]
    fn parameters_of_small_algebras() {
        let f = verified(&field_z2());
        assert_eq!(gi_parameters(&f), GiParameters { dims_gi: vec![1, 0, 0, 0], nd: 1, dim_j: 0 });
        let ut2 = verified(&upper_triangular(2).unwrap());
        assert_eq!(gi_parameters(&ut2), GiParameters { dims_gi: vec![1, 1, 0, 0], nd: 2, dim_j: 1 });
        assert_eq!(parameters_from_radical(ut2.algebra()).unwrap(), gi_parameters(&ut2));

        let g = FiniteAbelianGroup::cyclic(2);
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        let m2 = matrix_twisted_with_model(2, &g, &z, &[g.reduce(&[0]), g.reduce(&[1])], &InvolutionChoice::TransposeFamily(1)).unwrap();
        assert_eq!(gi_parameters(&verified(&m2)).dims_gi, vec![2, 0, 1, 1]);
    }

    #[test]
    fn reduced_witnesses() {
        let ut2 = verified(&upper_triangular(2).unwrap());
        let w = reduced_product_witness(&ut2, &Budget::default()).unwrap().unwrap();
        assert_eq!((w.sigma.clone(), w.diagonal.clone(), w.chain.len()), (vec![0], vec![0], 0));
        assert_eq!(w.a, ut2.algebra().unit().unwrap().clone());

        let ut3 = verified(&upper_triangular(3).unwrap());
        let w = reduced_product_witness(&ut3, &Budget::default()).unwrap().unwrap();
        assert_eq!(w.chain.len(), 1);
        assert!(!is_zero_vec(&w.a));

        let two = direct_product_with_model(&[field_z2(), field_z2()]).unwrap();
        assert_eq!(reduced_product_witness(&verified(&two), &Budget::default()).unwrap(), None);
    }
}
