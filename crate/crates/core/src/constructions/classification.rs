//! Representatives of the *-graded simple algebras for a cyclic group of
//! prime order or order 4, in five families:
//!
//! 1. exchange doubles of M_k(F[H]), H trivial, G, or {0,2} when q = 4;
//! 2. M_k(F) with an elementary grading and the reflection involution (plus
//!    the transpose when the tuple is constant);
//! 3. M_k(F[G]) with the transpose or symplectic involution;
//! 4. the same twisted by α = −1 on odd powers of the generator, q ∈ {2, 4};
//! 5. for q = 4, M_k(F[{0,2}]) with a tuple in {0,1}^k and an elementary
//!    involution built from an α-involution of the matrix superalgebra.

use serde_json::{json, Value};

use super::{
    exchange_double_with_model, matrix_twisted_with_model, ElementaryInvolutionSpec, InvolutionChoice, Modelled,
};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{chi4, FiniteAbelianGroup, GroupElement, TwoCocycle};

/// One emitted representative.
#[derive(Clone, Debug)]
pub struct ClassifiedAlgebra {
    pub family: u8,
    pub tag: String,
    /// Grading tuple as integers mod q.
    pub tuple: Vec<u32>,
    pub built: Modelled,
}

impl ClassifiedAlgebra {
    pub fn to_json(&self) -> Value {
        json!({ "family": self.family, "tag": self.tag, "tuple": self.tuple, "algebra": self.built.algebra.to_json() })
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Nondecreasing tuples of length k with first entry 0 and entries below
/// `bound`.
fn normalized_tuples(k: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(pos: usize, cur: &mut Vec<u32>, bound: u32, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        let lo = if pos == 0 { 0 } else { cur[pos - 1] };
        let hi = if pos == 0 { 0 } else { bound - 1 };
        for v in lo..=hi {
            cur[pos] = v;
            rec(pos + 1, cur, bound, out);
        }
    }
    rec(0, &mut cur, bound, &mut out);
    out
}

fn fmt_tuple(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn fmt_set(h: &[GroupElement]) -> String {
    let parts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// θ_i + θ_{k+1−i} is the same for every i.
fn reflection_graded(g: &FiniteAbelianGroup, t: &[GroupElement]) -> bool {
    let k = t.len();
    let s0 = g.add(&t[0], &t[k - 1]);
    (0..k).all(|i| g.add(&t[i], &t[k - 1 - i]) == s0)
}

/// Elementary involution of M_k(F[{0,2}]) ⊂ Z/4 given by
/// (E_ij η_ξ)^* = α^{χ(deg)} σ_ij E_st η_ξ̃, with (s,t) the image of (i,j)
/// under the base map (reflection or transpose) and ξ̃ absorbing the
/// degree difference.  The first sign pattern σ (in binary order, all +
/// first) giving an involution is returned; None if no pattern works.
pub fn family5_involution(
    k: usize,
    tuple: &[u32],
    alpha: i64,
    base_reflection: bool,
) -> Result<Option<ElementaryInvolutionSpec>> {
    let g = FiniteAbelianGroup::cyclic(4);
    let m = 4;
    let h = vec![g.reduce(&[0]), g.reduce(&[2])];
    let t: Vec<GroupElement> = tuple.iter().map(|&x| g.reduce(&[x as i64])).collect();
    let deg_e = |i: usize, j: usize| g.sub(&t[j], &t[i]);
    let z = TwoCocycle::trivial(h.clone(), m);
    if k * k > 16 {
        return Err(Error::ResourceCap(1 << 16));
    }
    for pattern in 0u32..(1 << (k * k)) {
        let mut spec = ElementaryInvolutionSpec::default();
        let mut ok = true;
        for i in 0..k {
            for j in 0..k {
                let (s, u) = if base_reflection { (k - 1 - j, k - 1 - i) } else { (j, i) };
                let sigma = if pattern >> (i * k + j) & 1 == 1 { -1 } else { 1 };
                for xi in &h {
                    let d = g.add(xi, &deg_e(i, j));
                    let xt = g.sub(&d, &deg_e(s, u));
                    if !h.contains(&xt) {
                        ok = false;
                    }
                    let chi = chi4(&g, &d)? as i64;
                    let c = if alpha == -1 && chi == 1 { -sigma } else { sigma };
                    spec.entries.insert((i, j, xi.clone()), (CycloScalar::from_int(m, c), s, u, xt));
                }
            }
        }
        if !ok {
            return Ok(None);
        }
        if matrix_twisted_with_model(k, &g, &z, &t, &InvolutionChoice::Elementary(spec.clone())).is_ok() {
            return Ok(Some(spec));
        }
    }
    Ok(None)
}

/// Representatives of all five families for G = Z/q and 1 ≤ k ≤ k_max.
pub fn enumerate_classification(q: u32, k_max: usize) -> Result<Vec<ClassifiedAlgebra>> {
    if !(is_prime(q) || q == 4) {
        return Err(Error::UnsupportedOrder(q));
    }
    let g = FiniteAbelianGroup::cyclic(q);
    let m = g.conductor();
    let el = |x: u32| g.reduce(&[x as i64]);
    let trivial_h = vec![g.identity()];
    let full_h = g.elements();
    let half_h = if q == 4 { Some(vec![el(0), el(2)]) } else { None };
    let mut out = Vec::new();
    let mut push = |family: u8, tag: String, tuple: &[u32], built: Modelled| {
        let algebra = built.algebra.clone().with_family(format!("family{family} {tag}"));
        out.push(ClassifiedAlgebra { family, tag, tuple: tuple.to_vec(), built: Modelled { algebra, model: built.model } });
    };

    for k in 1..=k_max {
        // Family 1.
        let mut subgroups = vec![(trivial_h.clone(), q), (full_h.clone(), 1)];
        if let Some(h) = &half_h {
            subgroups.push((h.clone(), 2));
        }
        for (h, coset_bound) in &subgroups {
            for tuple in normalized_tuples(k, *coset_bound) {
                let t: Vec<GroupElement> = tuple.iter().map(|&x| el(x)).collect();
                let z = TwoCocycle::trivial(h.clone(), m);
                let b = matrix_twisted_with_model(k, &g, &z, &t, &InvolutionChoice::None)?;
                let d = exchange_double_with_model(&b)?;
                push(1, format!("k={k} H={} tuple={} exchange", fmt_set(h), fmt_tuple(&tuple)), &tuple, d);
            }
        }

        // Family 2.
        let z = TwoCocycle::trivial(trivial_h.clone(), m);
        for tuple in normalized_tuples(k, q) {
            let t: Vec<GroupElement> = tuple.iter().map(|&x| el(x)).collect();
            if reflection_graded(&g, &t) {
                let spec = ElementaryInvolutionSpec::reflection(k, &trivial_h, m);
                let b = matrix_twisted_with_model(k, &g, &z, &t, &InvolutionChoice::Elementary(spec))?;
                push(2, format!("k={k} tuple={} reflection", fmt_tuple(&tuple)), &tuple, b);
            }
            if k > 1 && tuple.iter().all(|&x| x == tuple[0]) {
                let b = matrix_twisted_with_model(k, &g, &z, &t, &InvolutionChoice::TransposeFamily(1))?;
                push(2, format!("k={k} tuple={} transpose", fmt_tuple(&tuple)), &tuple, b);
            }
        }

        // Families 3 and 4.
        let z = TwoCocycle::trivial(full_h.clone(), m);
        let zeros = vec![g.identity(); k];
        let alphas: Vec<(u8, i64)> = if q == 2 || q == 4 { vec![(3, 1), (4, -1)] } else { vec![(3, 1)] };
        for (family, alpha) in alphas {
            let b = matrix_twisted_with_model(k, &g, &z, &zeros, &InvolutionChoice::TransposeFamily(alpha))?;
            push(family, format!("k={k} H={} transpose alpha={alpha}", fmt_set(&full_h)), &vec![0; k], b);
            if k % 2 == 0 {
                let b = matrix_twisted_with_model(k, &g, &z, &zeros, &InvolutionChoice::SymplecticFamily(alpha))?;
                push(family, format!("k={k} H={} symplectic alpha={alpha}", fmt_set(&full_h)), &vec![0; k], b);
            }
        }

        // Family 5.
        if let Some(h) = &half_h {
            let z = TwoCocycle::trivial(h.clone(), m);
            for tuple in normalized_tuples(k, 2) {
                let t: Vec<GroupElement> = tuple.iter().map(|&x| el(x)).collect();
                let constant = tuple.iter().all(|&x| x == tuple[0]);
                for alpha in [1i64, -1] {
                    let mut bases = Vec::new();
                    if reflection_graded(&FiniteAbelianGroup::cyclic(2), &tuple.iter().map(|&x| GroupElement(vec![x % 2])).collect::<Vec<_>>()) {
                        bases.push(true);
                    }
                    if k > 1 && constant {
                        bases.push(false);
                    }
                    for reflection in bases {
                        let spec = family5_involution(k, &tuple, alpha, reflection)?.ok_or_else(|| {
                            Error::InvalidSpec(format!("no elementary involution for tuple {}", fmt_tuple(&tuple)))
                        })?;
                        let b = matrix_twisted_with_model(k, &g, &z, &t, &InvolutionChoice::Elementary(spec))?;
                        let name = if reflection { "reflection" } else { "transpose" };
                        push(5, format!("k={k} H={} tuple={} {name} alpha={alpha}", fmt_set(h), fmt_tuple(&tuple)), &tuple, b);
                    }
                }
            }
        }
    }
    Ok(out)
}
