//! The superalgebra Φ(C) of a Z/4-graded algebra C whose degree-2 part is
//! generated by a central w with w² = 1: the space C₀ ⊕ C₁ with
//! a ⊙ b = ab, except a₁ ⊙ b₁ = a₁b₁w.

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::algebra::{GradedStarAlgebra, TableBuilder, Violation};
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{FiniteAbelianGroup, GroupElement};
use crate::json as js;
use crate::linalg::{kernel, proportional, scale_vec, to_dense, to_sparse, Element, SparseVec};

/// A Z/2-graded algebra with an α-involution: an order-2 graded linear map
/// with (a_i ⊙ b_j)^* = α^{ij} b_j^* ⊙ a_i^*.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    /// Structure constants, grading and the α-involution.  For α = −1 this
    /// is not a graded involution, so its `verify_axioms` reports the sign
    /// law as a failure; use [`SuperAlgebra::verify_alpha_involution`].
    pub algebra: GradedStarAlgebra,
    pub alpha: i64,
    /// The element w of C used for the odd-odd products.
    pub w: Element,
    /// Basis indices of C kept in Φ(C).
    pub kept: Vec<usize>,
}

impl SuperAlgebra {
    /// Associativity, gradedness, order two of the star and the α sign law
    /// on all basis pairs.
    pub fn verify_alpha_involution(&self) -> Vec<Violation> {
        let a = &self.algebra;
        let mut out: Vec<Violation> = a
            .verify_axioms()
            .into_iter()
            .filter(|v| matches!(v.axiom.as_str(), "associativity" | "grading" | "star-graded" | "star-order" | "unit"))
            .collect();
        let n = a.dim();
        'law: for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (a.degree(i).0[0] as i64, a.degree(j).0[0] as i64);
                let lhs = a.star_sparse(a.product_of_basis(i, j));
                let mut rhs = a.mul_sparse(a.star_of_basis(j), a.star_of_basis(i));
                if self.alpha == -1 && pi * pj % 2 == 1 {
                    rhs = rhs.into_iter().map(|(k, c)| (k, -c)).collect();
                }
                if lhs != rhs {
                    out.push(Violation::new(
                        "alpha-law",
                        vec![i, j],
                        format!("(a⊙b)^* ≠ α^(ij) b^*⊙a^* at ({}, {})", a.label(i), a.label(j)),
                    ));
                    break 'law;
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format": js::FORMAT,
            "alpha": self.alpha,
            "w": js::vector_to_json(&self.w),
            "kept": self.kept,
            "algebra": self.algebra.to_json(),
        })
    }
}

fn sqrt_rational(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    let s = BigRational::new(n, d);
    (&s * &s == *r).then_some(s)
}

/// Central elements of degree θ with square 1, normalized from the echelon
/// kernel.  Errors unless the central part of degree θ is one-dimensional.
fn central_unit(c: &GradedStarAlgebra, theta: &GroupElement) -> Result<Element> {
    let n = c.dim();
    let m = c.conductor();
    let idx = c.indices_of_degree(theta);
    let images: Vec<Element> = idx
        .iter()
        .map(|&p| {
            let b = c.basis_vector(p);
            let mut img = Vec::with_capacity(n * n);
            for q in 0..n {
                let e = c.basis_vector(q);
                let d: Element = c.mul(&b, &e).iter().zip(c.mul(&e, &b)).map(|(x, y)| x - &y).collect();
                img.extend(d);
            }
            img
        })
        .collect();
    let ker = kernel(&images, n * n, m);
    if ker.len() != 1 {
        return Err(Error::NoCentralUnit(format!("central part of degree {theta} has dimension {}", ker.len())));
    }
    let mut z = c.zero();
    for (coef, &p) in ker[0].iter().zip(&idx) {
        z[p] = coef.clone();
    }
    let unit = c.unit().ok_or_else(|| Error::NoCentralUnit("algebra has no unit".into()))?;
    let lambda = proportional(&c.mul(&z, &z), unit)
        .ok_or_else(|| Error::NoCentralUnit("square of the central element is not a scalar".into()))?;
    let root = lambda
        .as_rational()
        .and_then(sqrt_rational)
        .ok_or_else(|| Error::NoCentralUnit(format!("square {lambda} has no rational square root")))?;
    Ok(scale_vec(&z, &CycloScalar::from_rational(m, root).inv()?))
}

/// Φ(C) for a Z/4-graded C.  When `w` is None the central element of
/// degree 2 with w² = 1 is found automatically.
pub fn phi_functor(c: &GradedStarAlgebra, w: Option<&Element>) -> Result<SuperAlgebra> {
    if c.group().orders() != [4] {
        return Err(Error::WrongGroup(c.group().orders().to_vec()));
    }
    let g = c.group();
    let two = g.reduce(&[2]);
    let m = c.conductor();
    let n = c.dim();
    let w = match w {
        Some(w) => {
            if w.len() != n {
                return Err(Error::DimensionMismatch(n, w.len()));
            }
            if c.degree_of(w) != Some(two.clone()) {
                return Err(Error::NoCentralUnit("w is not homogeneous of degree 2".into()));
            }
            for q in 0..n {
                let e = c.basis_vector(q);
                if c.mul(w, &e) != c.mul(&e, w) {
                    return Err(Error::NoCentralUnit(format!("w does not commute with {}", c.label(q))));
                }
            }
            if Some(&c.mul(w, w)) != c.unit() {
                return Err(Error::NoCentralUnit("w² ≠ 1".into()));
            }
            w.clone()
        }
        None => central_unit(c, &two)?,
    };
    let alpha = match proportional(&c.star(&w), &w) {
        Some(a) if a.is_one() => 1,
        Some(a) if (-&a).is_one() => -1,
        other => return Err(Error::AlphaNotSign(format!("star(w) = {other:?}·w"))),
    };

    let kept: Vec<usize> = (0..n).filter(|&i| c.degree(i).0[0] < 2).collect();
    let pos = |i: usize| kept.iter().position(|&k| k == i);
    let restrict = |v: &Element| -> Result<SparseVec> {
        let mut out = Vec::new();
        for (i, x) in to_sparse(v) {
            let p = pos(i).ok_or_else(|| Error::Invalid(format!("value leaves C₀ ⊕ C₁ at {}", c.label(i))))?;
            out.push((p, x));
        }
        out.sort_by_key(|(p, _)| *p);
        Ok(out)
    };
    let z2 = FiniteAbelianGroup::cyclic(2);
    let mut mult = Vec::with_capacity(kept.len());
    for &i in &kept {
        let mut row = Vec::with_capacity(kept.len());
        for &j in &kept {
            let mut p = to_dense(c.product_of_basis(i, j), n, m);
            if c.degree(i).0[0] == 1 && c.degree(j).0[0] == 1 {
                p = c.mul(&p, &w);
            }
            row.push(restrict(&p)?);
        }
        mult.push(row);
    }
    let star = kept
        .iter()
        .map(|&i| restrict(&to_dense(c.star_of_basis(i), n, m)))
        .collect::<Result<Vec<_>>>()?;
    let unit = match c.unit() {
        Some(u) => Some(to_dense(&restrict(u)?, kept.len(), m)),
        None => None,
    };
    let builder = TableBuilder {
        group: z2.clone(),
        conductor: m,
        labels: kept.iter().map(|&i| c.label(i).to_string()).collect(),
        grading: kept.iter().map(|&i| z2.reduce(&[c.degree(i).0[0] as i64])).collect(),
    };
    let algebra = builder.build(|p, q| mult[p][q].clone(), |p| star[p].clone(), unit)?;
    Ok(SuperAlgebra { algebra, alpha, w, kept })
}
