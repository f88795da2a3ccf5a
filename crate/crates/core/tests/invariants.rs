//! Randomized checks of algebraic invariants.

use gsa_core::constructions::{
    exchange_double_with_model, matrix_twisted_with_model, tensor_truncated_polynomial, upper_triangular,
    InvolutionChoice, Modelled,
};
use gsa_core::cyclo::{divisors, root_of_unity};
use gsa_core::groupkit::enumerate_subgroups_and_characters;
use gsa_core::identities::{
    identity_space_dimension, is_identity, AlternatedPolynomial, IdentityVerdict, MultilinearPolynomial, StarVariable,
};
use gsa_core::linalg::{add_vec, is_zero_vec, Element};
use gsa_core::structure::{jacobson_radical, parameters_from_radical};
use gsa_core::{Budget, CompleteDegree, CycloScalar, FiniteAbelianGroup, GradedStarAlgebra, Sign, TwoCocycle};
use proptest::prelude::*;

fn matrix(h: &[i64], tuple: &[i64], alpha: i64) -> Modelled {
    let g = FiniteAbelianGroup::cyclic(2);
    let z = TwoCocycle::trivial(h.iter().map(|&x| g.reduce(&[x])).collect(), 2);
    let tuple: Vec<_> = tuple.iter().map(|&x| g.reduce(&[x])).collect();
    matrix_twisted_with_model(tuple.len(), &g, &z, &tuple, &InvolutionChoice::TransposeFamily(alpha)).unwrap()
}

/// Small algebras with and without radical, all over Z/2.
fn algebra(k: usize) -> GradedStarAlgebra {
    match k % 8 {
        0 => matrix(&[0], &[0], 1).algebra,
        1 => matrix(&[0, 1], &[0], -1).algebra,
        2 => matrix(&[0], &[0, 1], 1).algebra,
        3 => upper_triangular(2).unwrap().algebra,
        4 => upper_triangular(3).unwrap().algebra,
        5 => {
            let g = FiniteAbelianGroup::cyclic(2);
            let z = TwoCocycle::trivial(vec![g.identity(), g.reduce(&[1])], 2);
            let b = matrix_twisted_with_model(1, &g, &z, &[g.identity()], &InvolutionChoice::None).unwrap();
            exchange_double_with_model(&b).unwrap().algebra
        }
        6 => tensor_truncated_polynomial(&matrix(&[0], &[0], 1), 3, Sign::Minus).unwrap().algebra,
        _ => tensor_truncated_polynomial(&matrix(&[0, 1], &[0], 1), 2, Sign::Plus).unwrap().algebra,
    }
}

fn element(a: &GradedStarAlgebra, coeffs: &[i64]) -> Element {
    (0..a.dim()).map(|i| CycloScalar::from_int(a.conductor(), coeffs[i % coeffs.len()])).collect()
}

fn scalar(m: u32, parts: &[(i64, i64)]) -> CycloScalar {
    let mut s = CycloScalar::zero(m);
    for (k, &(p, q)) in parts.iter().enumerate() {
        s += &(&CycloScalar::from_frac(m, p, q) * &root_of_unity(m, k as i64));
    }
    s
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 8, 12])
}

fn coefficients() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=5), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(m in conductor(), a in coefficients(), b in coefficients(), c in coefficients()) {
        let (x, y, z) = (scalar(m, &a), scalar(m, &b), scalar(m, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order(m in 1u32..=24) {
        let z = root_of_unity(m, 1);
        prop_assert!(z.pow(m as i64).unwrap().is_one());
        for d in divisors(m).into_iter().filter(|&d| d < m) {
            prop_assert!(!z.pow(d as i64).unwrap().is_one());
        }
    }

    #[test]
    fn subgroups_and_characters(orders in prop::collection::vec(2u32..=4, 1..3)) {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let (subgroups, characters) = enumerate_subgroups_and_characters(&g).unwrap();
        for h in &subgroups {
            prop_assert_eq!(g.order() % h.len() as u64, 0);
            for x in h {
                prop_assert!(h.contains(&g.neg(x)));
                for y in h {
                    prop_assert!(h.contains(&g.add(x, y)));
                }
            }
        }
        let m = g.conductor();
        let elements = g.elements();
        for e in &characters {
            for x in &elements {
                for y in &elements {
                    prop_assert_eq!(
                        g.character_value(e, &g.add(x, y), m),
                        &g.character_value(e, x, m) * &g.character_value(e, y, m)
                    );
                }
            }
        }
    }

    #[test]
    fn symmetric_and_skew_parts_sum_to_the_element(k in 0usize..8, c in prop::collection::vec(-4i64..=4, 1..9)) {
        let a = algebra(k);
        let x = element(&a, &c);
        prop_assert_eq!(add_vec(&a.project_sign(&x, Sign::Plus), &a.project_sign(&x, Sign::Minus)), x);
    }

    #[test]
    fn star_is_an_anti_automorphism(k in 0usize..8, c in prop::collection::vec(-3i64..=3, 1..9), d in prop::collection::vec(-3i64..=3, 1..9)) {
        let a = algebra(k);
        let (x, y) = (element(&a, &c), element(&a, &d));
        prop_assert_eq!(a.star(&a.mul(&x, &y)), a.mul(&a.star(&y), &a.star(&x)));
        prop_assert_eq!(a.star(&a.star(&x)), x);
    }

    #[test]
    fn ideal_closure_is_idempotent(k in 0usize..8, c in prop::collection::vec(-3i64..=3, 1..9)) {
        let a = algebra(k);
        let x = element(&a, &c);
        let i = a.ideal_closure(&[x.clone()]);
        prop_assert!(i.contains(&x));
        prop_assert_eq!(a.ideal_closure(&i.rows()), i);
    }

    #[test]
    fn radical_is_a_graded_star_ideal_with_semisimple_quotient(k in 0usize..8) {
        let a = algebra(k);
        let j = jacobson_radical(&a);
        for r in j.rows() {
            prop_assert!(j.contains(&a.star(&r)));
            for t in a.group().elements() {
                prop_assert!(j.contains(&a.project_degree(&r, &t)));
            }
            for i in 0..a.dim() {
                prop_assert!(j.contains(&a.mul(&a.basis_vector(i), &r)));
                prop_assert!(j.contains(&a.mul(&r, &a.basis_vector(i))));
            }
        }
        let (q, _) = a.quotient(&j).unwrap();
        if q.dim() > 0 {
            prop_assert!(jacobson_radical(&q).is_zero());
        }
    }

    #[test]
    fn quotients_lower_the_parameters(k in 0usize..8, c in prop::collection::vec(-3i64..=3, 1..9)) {
        let a = algebra(k);
        let x = element(&a, &c);
        prop_assume!(!is_zero_vec(&x));
        let i = a.ideal_closure(&[x]);
        let (q, _) = a.quotient(&i).unwrap();
        let before = parameters_from_radical(&a).unwrap();
        let after = if q.dim() == 0 {
            gsa_core::structure::GiParameters { dims_gi: vec![0; before.dims_gi.len()], nd: 1, dim_j: 0 }
        } else {
            parameters_from_radical(&q).unwrap()
        };
        prop_assert!(after < before, "{:?} !< {:?}", after, before);
    }

    #[test]
    fn polynomial_star_is_an_involution(
        kinds in prop::collection::vec(any::<bool>(), 1..5),
        coeffs in prop::collection::vec(-3i64..=3, 1..6),
        seed in any::<u64>(),
    ) {
        let g = FiniteAbelianGroup::cyclic(2);
        let vars: Vec<StarVariable> = kinds
            .iter()
            .enumerate()
            .map(|(i, &z)| if z { StarVariable::z(i + 1, g.identity()) } else { StarVariable::y(i + 1, g.identity()) })
            .collect();
        let n = vars.len();
        let mut f = MultilinearPolynomial::zero(vars, 2).unwrap();
        for (t, &c) in coeffs.iter().enumerate() {
            let mut word: Vec<usize> = (1..=n).collect();
            word.rotate_left(((seed >> (t * 3)) as usize) % n);
            if t % 2 == 1 {
                word.reverse();
            }
            f.add_term(CycloScalar::from_int(2, c), word).unwrap();
        }
        prop_assert_eq!(f.star().star(), f);
    }

    #[test]
    fn alternation_changes_sign_under_a_swap(k in 0usize..8, c in prop::collection::vec(-2i64..=2, 1..9), d in prop::collection::vec(-2i64..=2, 1..9), e in prop::collection::vec(-2i64..=2, 1..9)) {
        let a = algebra(k);
        let cd = CompleteDegree::new(Sign::Plus, a.group().identity());
        let vars = vec![StarVariable::of_degree(1, &cd), StarVariable::of_degree(2, &cd), StarVariable::of_degree(3, &cd)];
        let base = MultilinearPolynomial::monomial(vars, a.conductor(), vec![1, 3, 2]).unwrap();
        let f = AlternatedPolynomial::new(base, vec![vec![1, 2]]).unwrap();
        let v: Vec<Element> = [&c, &d, &e].iter().map(|x| a.project(&element(&a, x), &cd)).collect();
        let swapped = vec![v[1].clone(), v[0].clone(), v[2].clone()];
        let lhs = f.evaluate(&a, &v, &Budget::default()).unwrap();
        let rhs = f.evaluate(&a, &swapped, &Budget::default()).unwrap();
        prop_assert!(is_zero_vec(&add_vec(&lhs, &rhs)));
    }

    #[test]
    fn identity_space_splits_the_monomials(k in 0usize..8, slots in prop::collection::vec(0usize..4, 1..4)) {
        let a = algebra(k);
        let all = CompleteDegree::all(a.group());
        let vars: Vec<StarVariable> = slots.iter().enumerate().map(|(i, &s)| StarVariable::of_degree(i + 1, &all[s])).collect();
        let n = vars.len();
        let space = identity_space_dimension(&a, &vars, &Budget::default()).unwrap();
        prop_assert_eq!(space.identities + space.quotient, (1..=n).product::<usize>());
        for f in &space.kernel {
            prop_assert_eq!(is_identity(&a, f, &Budget::default()).unwrap(), IdentityVerdict::Yes);
        }
    }

    #[test]
    fn alternating_on_too_many_variables_is_an_identity(k in 0usize..8, slot in 0usize..4) {
        let a = algebra(k);
        let cd = CompleteDegree::all(a.group())[slot].clone();
        let size = a.component_dims()[slot] + 1;
        prop_assume!(size <= 4);
        let vars: Vec<StarVariable> = (1..=size).map(|i| StarVariable::of_degree(i, &cd)).collect();
        let base = MultilinearPolynomial::monomial(vars, a.conductor(), (1..=size).collect()).unwrap();
        let f = AlternatedPolynomial::new(base, vec![(1..=size).collect()]).unwrap().expand(&Budget::default()).unwrap();
        prop_assert_eq!(is_identity(&a, &f, &Budget::default()).unwrap(), IdentityVerdict::Yes);
    }
}
