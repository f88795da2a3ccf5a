//! Algebras with a nonzero radical, used to exercise the structure and
//! identity machinery.

use super::{AlgebraModel, ComponentKind, ComponentModel, MatrixUnit, Modelled};
use crate::algebra::TableBuilder;
use crate::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::groupkit::{FiniteAbelianGroup, Sign};
use crate::linalg::{unit_vec, zero_vec, Element};

/// Upper triangular n×n matrices over Z/2 with deg E_ij = (j − i) mod 2 and
/// the reflection involution E_ij ↦ E_{n+1−j, n+1−i}.
///
/// The diagonal splits into exchange-type components {E_ii, E_{n+1−i,n+1−i}}
/// and, for odd n, the middle component {E_mm}.
pub fn upper_triangular(n: usize) -> Result<Modelled> {
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let g = FiniteAbelianGroup::cyclic(2);
    let m = 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let dim = pairs.len();
    let labels = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let grading = pairs.iter().map(|(i, j)| g.reduce(&[(j - i) as i64])).collect();
    let mut unit = zero_vec(dim, m);
    for i in 0..n {
        unit[pos(i, i)] = CycloScalar::one(m);
    }
    let one = CycloScalar::one(m);
    let algebra = TableBuilder { group: g.clone(), conductor: m, labels, grading }.build(
        |p, q| {
            let ((i, j), (k, l)) = (pairs[p], pairs[q]);
            if j == k {
                vec![(pos(i, l), one.clone())]
            } else {
                vec![]
            }
        },
        |p| {
            let (i, j) = pairs[p];
            vec![(pos(n - 1 - j, n - 1 - i), one.clone())]
        },
        Some(unit),
    )?;
    let diag = |i: usize| unit_vec(dim, pos(i, i), m);
    let mut components = Vec::new();
    for i in 0..n {
        let mirror = n - 1 - i;
        if i > mirror {
            break;
        }
        let (kind, right) = if i < mirror {
            (ComponentKind::Exchange, Some(diag(mirror)))
        } else {
            (ComponentKind::Elementary, None)
        };
        components.push(ComponentModel {
            kind,
            k: 1,
            subgroup: vec![g.identity()],
            lambda: CycloScalar::one(m),
            units: vec![MatrixUnit { i: 0, j: 0, xi: g.identity(), left: diag(i), right }],
        });
    }
    Ok(Modelled { algebra: algebra.with_family(format!("UT{n}")), model: AlgebraModel { components } })
}

/// B ⊗ F[t]/(t^s) with t of neutral degree, symmetric or skew.  The
/// radical is B ⊗ tF[t]; the semisimple part is B ⊗ 1 with B's model.
pub fn tensor_truncated_polynomial(b: &Modelled, s: usize, t_sign: Sign) -> Result<Modelled> {
    if s == 0 {
        return Err(Error::Invalid("truncation degree must be positive".into()));
    }
    let a = &b.algebra;
    let (nb, m) = (a.dim(), a.conductor());
    let n = nb * s;
    let labels = (0..nb)
        .flat_map(|i| {
            (0..s).map(move |e| match e {
                0 => a.label(i).to_string(),
                1 => format!("{}t", a.label(i)),
                _ => format!("{}t^{e}", a.label(i)),
            })
        })
        .collect();
    let grading = (0..nb).flat_map(|i| std::iter::repeat(a.degree(i).clone()).take(s)).collect();
    let unit = a.unit().map(|u| {
        let mut out = zero_vec(n, m);
        for (i, x) in u.iter().enumerate() {
            out[i * s] = x.clone();
        }
        out
    });
    let algebra = TableBuilder { group: a.group().clone(), conductor: m, labels, grading }.build(
        |p, q| {
            let ((i, e), (j, f)) = ((p / s, p % s), (q / s, q % s));
            if e + f >= s {
                return vec![];
            }
            a.product_of_basis(i, j).iter().map(|(k, c)| (k * s + e + f, c.clone())).collect()
        },
        |p| {
            let (i, e) = (p / s, p % s);
            let negate = t_sign == Sign::Minus && e % 2 == 1;
            a.star_of_basis(i).iter().map(|(k, c)| (k * s + e, if negate { -c } else { c.clone() })).collect()
        },
        unit,
    )?;
    let lift = |v: &Element| -> Element {
        let mut out = zero_vec(n, m);
        for (i, x) in v.iter().enumerate() {
            out[i * s] = x.clone();
        }
        out
    };
    let components = b.model.components.iter().map(|c| c.mapped(&lift)).collect();
    let tag = format!("{}⊗F[t]/t^{s}", a.family().unwrap_or("B"));
    Ok(Modelled { algebra: algebra.with_family(tag), model: AlgebraModel { components } })
}
