//! Polynomials of type (dims_gi; 0; μ) that are not identities, built from
//! blocks W_l = c d₁ c d₂ ⋯ c d_{t_l} c over each simple component,
//! joined by radical variables along a nonzero reduced product.

use serde_json::{json, Value};

use super::polynomial::{AlternatedPolynomial, MultilinearPolynomial, StarVariable};
use crate::budget::Budget;
use crate::constructions::ComponentKind;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::CompleteDegree;
use crate::json as js;
use crate::linalg::{add_vec, is_zero_vec, proportional, sub_vec, Element};
use crate::structure::{gi_parameters, reduced_product_witness, ReducedWitness, VerifiedDecomposition};

/// Largest dim B accepted by [`kemer_witness`].
pub const WITNESS_MAX_T: usize = 6;
/// Largest μ accepted by [`kemer_witness`].
pub const WITNESS_MAX_MU: usize = 2;

/// What a variable of the witness stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlotRole {
    /// Joins consecutive semisimple variables of component `component`;
    /// `last` marks the closing connector of a block.
    Connector { component: usize, last: bool },
    /// Copy `copy` of the D element `index` of component `component`.
    Semisimple { component: usize, copy: usize, index: usize },
    /// The radical element `index` of U joining two blocks.
    Radical { index: usize },
}

impl SlotRole {
    fn describe(&self) -> String {
        match self {
            SlotRole::Connector { component, last } => {
                format!("connector(C{component}{})", if *last { ", closing" } else { "" })
            }
            SlotRole::Semisimple { component, copy, index } => format!("d(C{component}, copy {copy}, #{index})"),
            SlotRole::Radical { index } => format!("r(U#{index})"),
        }
    }
}

/// A certified non-identity of type (dims_gi; 0; μ).
#[derive(Clone, Debug)]
pub struct KemerWitness {
    pub polynomial: AlternatedPolynomial,
    pub mu: usize,
    /// Per complete degree, the size of each of the μ alternating
    /// collections.
    pub type_dims: Vec<usize>,
    pub roles: Vec<SlotRole>,
    /// Homogeneous substitution, one value per variable.
    pub values: Vec<Element>,
    /// f at `values`; nonzero.
    pub value: Element,
    /// Substitution before connectors were split into homogeneous parts.
    pub full_values: Vec<Element>,
    /// f at `full_values` equals alpha · a.
    pub alpha: CycloScalar,
    pub a: Element,
    pub reduced: ReducedWitness,
}

impl KemerWitness {
    pub fn to_json(&self) -> Value {
        let mut poly = self.polynomial.base.to_json();
        poly["alternate"] = json!(self.polynomial.sets);
        json!({
            "format": js::FORMAT,
            "mu": self.mu,
            "type": { "dims": self.type_dims, "s": 0, "mu": self.mu },
            "polynomial": poly,
            "roles": self.roles.iter().map(|r| r.describe()).collect::<Vec<_>>(),
            "values": self.values.iter().map(|v| js::vector_to_json(v)).collect::<Vec<_>>(),
            "value": js::vector_to_json(&self.value),
            "full_values": self.full_values.iter().map(|v| js::vector_to_json(v)).collect::<Vec<_>>(),
            "alpha": js::scalar_to_json(&self.alpha),
            "a": js::vector_to_json(&self.a),
            "reduced": self.reduced.to_json(),
        })
    }
}

struct Search<'a> {
    dec: &'a VerifiedDecomposition,
    roles: &'a [SlotRole],
    /// Fixed values of non-connector slots.
    fixed: &'a [Option<Element>],
    inner: &'a [Vec<Element>],
    closing: &'a [Vec<Element>],
    /// Diagonal unit each block must be proportional to, by component.
    targets: &'a [Element],
    sets: &'a [Vec<usize>],
    a_target: &'a Element,
    chosen: Vec<Option<Element>>,
    budget: &'a Budget,
}

impl Search<'_> {
    fn alternated(&self, values: &[Element]) -> Result<Element> {
        let a = self.dec.algebra();
        let vars: Vec<StarVariable> = (0..values.len())
            .map(|i| StarVariable::of_degree(i + 1, &CompleteDegree::all(a.group())[0]))
            .collect();
        // Only the evaluation shape matters here, so every variable gets the
        // same degree; the alternation sets are checked on the real
        // polynomial later.
        let base = MultilinearPolynomial::monomial(vars, a.conductor(), (1..=values.len()).collect())?;
        AlternatedPolynomial::new(base, self.sets.to_vec())?.evaluate(a, values, self.budget)
    }

    fn run(&mut self, pos: usize, prefix: Option<Element>) -> Result<Option<(Vec<Element>, CycloScalar)>> {
        let a = self.dec.algebra();
        let cost = (a.dim() * a.dim()) as u64;
        if pos == self.roles.len() {
            let values: Vec<Element> = self.chosen.iter().map(|v| v.clone().unwrap()).collect();
            let v = self.alternated(&values)?;
            if is_zero_vec(&v) {
                return Ok(None);
            }
            return Ok(proportional(&v, self.a_target).map(|c| (values, c)));
        }
        let times = |p: &Option<Element>, x: &Element| -> Result<Element> {
            self.budget.charge(cost)?;
            Ok(match p {
                None => x.clone(),
                Some(p) => a.mul(p, x),
            })
        };
        match &self.roles[pos] {
            SlotRole::Connector { component, last } => {
                let list = if *last { &self.closing[*component] } else { &self.inner[*component] };
                for c in list {
                    let next = times(&prefix, c)?;
                    if is_zero_vec(&next) {
                        continue;
                    }
                    if *last {
                        match proportional(&next, &self.targets[*component]) {
                            Some(k) if !k.is_zero() => {}
                            _ => continue,
                        }
                    }
                    self.chosen[pos] = Some(c.clone());
                    let carry = if *last { None } else { Some(next) };
                    if let Some(found) = self.run(pos + 1, carry)? {
                        return Ok(Some(found));
                    }
                }
                self.chosen[pos] = None;
                Ok(None)
            }
            SlotRole::Semisimple { .. } => {
                let x = self.fixed[pos].clone().unwrap();
                let next = times(&prefix, &x)?;
                if is_zero_vec(&next) {
                    return Ok(None);
                }
                self.chosen[pos] = Some(x);
                self.run(pos + 1, Some(next))
            }
            SlotRole::Radical { .. } => {
                self.chosen[pos] = self.fixed[pos].clone();
                self.run(pos + 1, None)
            }
        }
    }
}

/// Builds f = W_{σ(1)} r₁ W_{σ(2)} ⋯ r_{p−1} W_{σ(p)}, alternated over each
/// of the μ copies of D per complete degree, and a substitution with
/// f = α·a ≠ 0 for the reduced product a.  Connectors range over the
/// matrix units of their component (for exchange components, sums and
/// differences of a left and a right unit of the same H-degree); the
/// search is depth first in that order.
pub fn kemer_witness(dec: &VerifiedDecomposition, mu: usize, budget: &Budget) -> Result<KemerWitness> {
    let a = dec.algebra();
    let g = a.group();
    let t = dec.t();
    if mu == 0 {
        return Err(Error::Invalid("μ must be positive".into()));
    }
    if t > WITNESS_MAX_T || mu > WITNESS_MAX_MU {
        return Err(Error::SizeCap(format!(
            "witness for dim B = {t}, μ = {mu} above the caps {WITNESS_MAX_T}, {WITNESS_MAX_MU}"
        )));
    }
    let reduced = reduced_product_witness(dec, budget)?.ok_or(Error::NoReducedWitness)?;
    let p = dec.p();
    let all = CompleteDegree::all(g);

    let mut inner = Vec::with_capacity(p);
    let mut closing = Vec::with_capacity(p);
    let mut targets = Vec::with_capacity(p);
    for l in 0..p {
        let model = dec.model(l)?;
        let (i, c) = match model.kind {
            ComponentKind::Elementary => {
                let v: Vec<Element> = model.units.iter().map(|u| u.left.clone()).collect();
                (v.clone(), v)
            }
            ComponentKind::Exchange => {
                let mut i = Vec::new();
                let mut c = Vec::new();
                for u1 in &model.units {
                    for u2 in model.units.iter().filter(|u| u.xi == u1.xi) {
                        let r = u2.right.as_ref().ok_or_else(|| {
                            Error::DecompositionMismatch(format!("exchange component {l} has a one-sided unit"))
                        })?;
                        i.push(add_vec(&u1.left, r));
                        c.push(add_vec(&u1.left, r));
                        c.push(sub_vec(&u1.left, r));
                    }
                }
                (i, c)
            }
        };
        inner.push(i);
        closing.push(c);
        targets.push(Element::new());
    }
    for (pos, &l) in reduced.sigma.iter().enumerate() {
        targets[l] = crate::structure::diagonal_unit(dec, l, reduced.diagonal[pos])?;
    }

    // Slot layout.
    let mut roles = Vec::new();
    let mut fixed: Vec<Option<Element>> = Vec::new();
    let mut cds: Vec<Option<CompleteDegree>> = Vec::new();
    for (pos, &l) in reduced.sigma.iter().enumerate() {
        let basis = &dec.data().components[l].basis;
        for copy in 0..mu {
            for (index, d) in basis.iter().enumerate() {
                roles.push(SlotRole::Connector { component: l, last: false });
                fixed.push(None);
                cds.push(None);
                roles.push(SlotRole::Semisimple { component: l, copy, index });
                fixed.push(Some(d.vector.clone()));
                cds.push(Some(d.cd.clone()));
            }
        }
        roles.push(SlotRole::Connector { component: l, last: true });
        fixed.push(None);
        cds.push(None);
        if pos + 1 < reduced.sigma.len() {
            let index = reduced.chain[pos];
            let u = &dec.data().radical[index];
            roles.push(SlotRole::Radical { index });
            fixed.push(Some(u.vector.clone()));
            cds.push(Some(u.cd.clone()));
        }
    }
    let mut sets = Vec::new();
    for copy in 0..mu {
        for cd in &all {
            let set: Vec<usize> = roles
                .iter()
                .enumerate()
                .filter(|(i, r)| matches!(r, SlotRole::Semisimple { copy: c, .. } if *c == copy) && cds[*i].as_ref() == Some(cd))
                .map(|(i, _)| i + 1)
                .collect();
            if !set.is_empty() {
                sets.push(set);
            }
        }
    }

    let mut search = Search {
        dec,
        roles: &roles,
        fixed: &fixed,
        inner: &inner,
        closing: &closing,
        targets: &targets,
        sets: &sets,
        a_target: &reduced.a,
        chosen: vec![None; roles.len()],
        budget,
    };
    let (full_values, alpha) = search.run(0, None)?.ok_or_else(|| {
        Error::Invalid("no connector substitution gives a nonzero multiple of the reduced product".into())
    })?;

    // Replace each connector by a homogeneous part keeping f nonzero.
    let mut values = full_values.clone();
    for pos in 0..roles.len() {
        if !matches!(roles[pos], SlotRole::Connector { .. }) {
            continue;
        }
        let whole = values[pos].clone();
        let mut picked = None;
        for cd in &all {
            let part = a.project(&whole, cd);
            if is_zero_vec(&part) {
                continue;
            }
            values[pos] = part.clone();
            if !is_zero_vec(&search.alternated(&values)?) {
                picked = Some(cd.clone());
                break;
            }
        }
        match picked {
            Some(cd) => cds[pos] = Some(cd),
            None => return Err(Error::Invalid("no homogeneous part of a connector keeps the value nonzero".into())),
        }
    }

    let vars: Vec<StarVariable> =
        cds.iter().enumerate().map(|(i, cd)| StarVariable::of_degree(i + 1, cd.as_ref().unwrap())).collect();
    let base = MultilinearPolynomial::monomial(vars, a.conductor(), (1..=roles.len()).collect())?;
    let polynomial = AlternatedPolynomial::new(base, sets)?;
    let value = polynomial.evaluate(a, &values, budget)?;
    debug_assert!(!is_zero_vec(&value));

    let mut type_dims = vec![0; all.len()];
    for (i, r) in roles.iter().enumerate() {
        if let SlotRole::Semisimple { copy: 0, .. } = r {
            type_dims[cds[i].as_ref().unwrap().slot(g)] += 1;
        }
    }
    Ok(KemerWitness { polynomial, mu, type_dims, roles, values, value, full_values, alpha, a: reduced.a.clone(), reduced })
}

/// dims_gi, certified as a lower bound for β by a witness at μ.
pub fn beta_lower_bound(dec: &VerifiedDecomposition, mu: usize, budget: &Budget) -> Result<Vec<usize>> {
    kemer_witness(dec, mu, budget)?;
    Ok(gi_parameters(dec).dims_gi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matrix_twisted_with_model, upper_triangular, InvolutionChoice, Modelled};
    use crate::groupkit::{FiniteAbelianGroup, TwoCocycle};
    use crate::identities::{is_identity, IdentityVerdict};
    use crate::structure::{canonical_decomposition, verify_decomposition};

    fn verified(built: &Modelled) -> VerifiedDecomposition {
        let data = canonical_decomposition(built).unwrap();
        verify_decomposition(&built.algebra, &data, 0, &Budget::default()).unwrap().decomposition.unwrap()
    }

    #[test]
    fn field_witness() {
        let g = FiniteAbelianGroup::cyclic(2);
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        let f = verified(&matrix_twisted_with_model(1, &g, &z, &[g.identity()], &InvolutionChoice::TransposeFamily(1)).unwrap());
        let w = kemer_witness(&f, 1, &Budget::default()).unwrap();
        assert_eq!(w.type_dims, vec![1, 0, 0, 0]);
        assert_eq!(w.value, f.algebra().unit().unwrap().clone());
        assert_eq!(beta_lower_bound(&f, 2, &Budget::default()).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn ut2_witness() {
        let dec = verified(&upper_triangular(2).unwrap());
        for mu in 1..=2 {
            let w = kemer_witness(&dec, mu, &Budget::default()).unwrap();
            assert_eq!(w.type_dims, vec![1, 1, 0, 0]);
            assert!(!w.alpha.is_zero());
            let f = w.polynomial.expand(&Budget::default()).unwrap();
            assert!(matches!(is_identity(dec.algebra(), &f, &Budget::default()).unwrap(), IdentityVerdict::No { .. }));
        }
    }

    #[test]
    fn ut2_witness_satisfies_the_trace_identities() {
        let dec = verified(&upper_triangular(2).unwrap());
        let w = kemer_witness(&dec, 1, &Budget::default()).unwrap();
        let normal: Vec<usize> = w.polynomial.sets.iter().flatten().copied().collect();
        let poly = crate::identities::TraceTestPolynomial { f: w.polynomial.clone(), normal };
        let report = crate::identities::check_trace_identities(&dec, &poly, &Budget::default()).unwrap();
        assert!(report.holds(), "{:?}", report.counterexamples);
        assert!(report.substitution_checked[0] > 0);
    }

    #[test]
    fn components_joined_by_a_radical_variable() {
        let dec = verified(&upper_triangular(3).unwrap());
        assert!(dec.p() > 1);
        for mu in 1..=2 {
            let w = kemer_witness(&dec, mu, &Budget::default()).unwrap();
            assert_eq!(w.roles.iter().filter(|r| matches!(r, SlotRole::Radical { .. })).count(), dec.p() - 1);
            assert_eq!(w.type_dims, gi_parameters(&dec).dims_gi);
            assert!(!is_zero_vec(&w.value));
        }
    }

    #[test]
    fn orthogonal_components_have_no_witness() {
        let g = FiniteAbelianGroup::cyclic(2);
        let z = TwoCocycle::trivial(vec![g.identity()], 2);
        let f = matrix_twisted_with_model(1, &g, &z, &[g.identity()], &InvolutionChoice::TransposeFamily(1)).unwrap();
        let two = crate::constructions::direct_product_with_model(&[f.clone(), f]).unwrap();
        assert_eq!(kemer_witness(&verified(&two), 1, &Budget::default()).unwrap_err(), Error::NoReducedWitness);
    }

    #[test]
    fn caps() {
        let dec = verified(&upper_triangular(2).unwrap());
        assert!(matches!(kemer_witness(&dec, 3, &Budget::default()), Err(Error::SizeCap(_))));
    }
}
