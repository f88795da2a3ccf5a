//! Finite abelian groups, subgroups, characters, 2-cocycles and complete
//! degrees.
//!
//! Elements are enumerated lexicographically with the identity first; this
//! order fixes the layout of every dimension tuple in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{root_of_unity, CycloScalar};
use crate::error::{Error, Result};

/// Default cap on |G| for subgroup and character enumeration.
pub const ENUMERATION_CAP: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u32>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&o| o == 0) {
            return Err(Error::Invalid(format!("bad group orders {orders:?}")));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&o| o as u64).product()
    }

    /// The exponent lcm(orders), used as the default conductor.
    pub fn conductor(&self) -> u32 {
        self.orders.iter().fold(1u32, |a, &b| a.lcm(&b))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn reduce(&self, v: &[i64]) -> GroupElement {
        GroupElement(
            v.iter()
                .zip(&self.orders)
                .map(|(&x, &o)| x.rem_euclid(o as i64) as u32)
                .collect(),
        )
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(x, o)| x < o)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), o)| (x + y) % o)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.orders).map(|(x, o)| (o - x) % o).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// n·a.
    pub fn times(&self, n: i64, a: &GroupElement) -> GroupElement {
        let v: Vec<i64> = a.0.iter().map(|&x| x as i64 * n).collect();
        self.reduce(&v)
    }

    pub fn element_order(&self, a: &GroupElement) -> u32 {
        a.0.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| o / x.gcd(&o))
            .fold(1u32, |acc, k| acc.lcm(&k))
    }

    /// Elements in lexicographic order; the identity comes first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u32; self.orders.len()];
        loop {
            out.push(GroupElement(cur.clone()));
            let mut i = self.orders.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Position of `g` in [`Self::elements`].
    pub fn index_of(&self, g: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (x, o) in g.0.iter().zip(&self.orders) {
            idx = idx * (*o as usize) + *x as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut v = vec![0u32; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let o = self.orders[i] as usize;
            v[i] = (idx % o) as u32;
            idx /= o;
        }
        GroupElement(v)
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut set: BTreeSet<GroupElement> = BTreeSet::new();
        set.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Value of the character with exponent vector `e` at `g`.
    pub fn character_value(&self, e: &[u32], g: &GroupElement, m: u32) -> CycloScalar {
        let base = self.conductor();
        assert!(m % base == 0, "conductor must be a multiple of the group exponent");
        let mut k: i64 = 0;
        for ((ei, gi), oi) in e.iter().zip(&g.0).zip(&self.orders) {
            k += (*ei as i64) * (*gi as i64) * ((m / oi) as i64);
        }
        root_of_unity(m, k)
    }
}

/// Symmetric (+) or skew (−) part under the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// A pair (δ, θ): sign under the involution and group degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompleteDegree {
    pub sign: Sign,
    pub degree: GroupElement,
}

impl CompleteDegree {
    pub fn new(sign: Sign, degree: GroupElement) -> Self {
        CompleteDegree { sign, degree }
    }

    /// Slot in a dimension tuple: (θ̂₁,+), (θ̂₁,−), (θ̂₂,+), …
    pub fn slot(&self, g: &FiniteAbelianGroup) -> usize {
        2 * g.index_of(&self.degree) + if self.sign == Sign::Plus { 0 } else { 1 }
    }

    /// All complete degrees in tuple order.
    pub fn all(g: &FiniteAbelianGroup) -> Vec<CompleteDegree> {
        g.elements()
            .into_iter()
            .flat_map(|e| Sign::both().map(|s| CompleteDegree::new(s, e.clone())))
            .collect()
    }
}

impl fmt::Display for CompleteDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.sign.symbol(), self.degree)
    }
}

/// A 2-cocycle on a subgroup H with values in Q(ζ_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    pub subgroup: Vec<GroupElement>,
    pub table: BTreeMap<(GroupElement, GroupElement), CycloScalar>,
}

impl TwoCocycle {
    /// The constant-1 cocycle.
    pub fn trivial(subgroup: Vec<GroupElement>, m: u32) -> Self {
        let mut table = BTreeMap::new();
        for a in &subgroup {
            for b in &subgroup {
                table.insert((a.clone(), b.clone()), CycloScalar::one(m));
            }
        }
        TwoCocycle { subgroup, table }
    }

    pub fn get(&self, a: &GroupElement, b: &GroupElement) -> Result<&CycloScalar> {
        self.table
            .get(&(a.clone(), b.clone()))
            .ok_or_else(|| Error::IncompleteTable(a.to_string(), b.to_string()))
    }

    pub fn conductor(&self) -> Option<u32> {
        self.table.values().next().map(|s| s.conductor())
    }

    /// True when every table value is 1.
    pub fn is_trivial(&self) -> bool {
        self.table.values().all(|v| v.is_one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleCheck {
    Valid,
    /// The identity ζ(a,b)ζ(a+b,c) = ζ(a,b+c)ζ(b,c) fails at (a,b,c).
    Invalid(GroupElement, GroupElement, GroupElement),
    /// The value ζ(a,b) is zero.
    ZeroValue(GroupElement, GroupElement),
}

/// All subgroups (sorted element lists) and all characters (exponent
/// vectors) of `g`.
pub fn enumerate_subgroups_and_characters(
    g: &FiniteAbelianGroup,
) -> Result<(Vec<Vec<GroupElement>>, Vec<Vec<u32>>)> {
    enumerate_with_cap(g, ENUMERATION_CAP)
}

pub fn enumerate_with_cap(
    g: &FiniteAbelianGroup,
    cap: u64,
) -> Result<(Vec<Vec<GroupElement>>, Vec<Vec<u32>>)> {
    if g.order() > cap {
        return Err(Error::GroupTooLarge(g.order(), cap));
    }
    let elems = g.elements();
    let mut found: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    let trivial = vec![g.identity()];
    found.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in &elems {
            if h.binary_search(x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x.clone());
            let s = g.span(&gens);
            if found.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    let mut subgroups: Vec<Vec<GroupElement>> = found.into_iter().collect();
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let characters = elems.into_iter().map(|e| e.0).collect();
    Ok((subgroups, characters))
}

fn check_subgroup(g: &FiniteAbelianGroup, h: &[GroupElement]) -> Result<()> {
    let set: BTreeSet<&GroupElement> = h.iter().collect();
    if !set.contains(&g.identity()) {
        return Err(Error::InvalidCocycle("subgroup lacks the identity".into()));
    }
    for a in h {
        if !g.contains(a) {
            return Err(Error::InvalidCocycle(format!("{a} is not an element of the group")));
        }
        for b in h {
            if !set.contains(&g.add(a, b)) {
                return Err(Error::InvalidCocycle(format!("subgroup not closed at {a}+{b}")));
            }
        }
    }
    Ok(())
}

/// Exhaustive check of the cocycle identity on H×H×H.
pub fn verify_cocycle(g: &FiniteAbelianGroup, z: &TwoCocycle) -> Result<CocycleCheck> {
    check_subgroup(g, &z.subgroup)?;
    for a in &z.subgroup {
        for b in &z.subgroup {
            if z.get(a, b)?.is_zero() {
                return Ok(CocycleCheck::ZeroValue(a.clone(), b.clone()));
            }
        }
    }
    for a in &z.subgroup {
        for b in &z.subgroup {
            for c in &z.subgroup {
                let lhs = z.get(a, b)? * z.get(&g.add(a, b), c)?;
                let rhs = z.get(a, &g.add(b, c))? * z.get(b, c)?;
                if lhs != rhs {
                    return Ok(CocycleCheck::Invalid(a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    Ok(CocycleCheck::Valid)
}

/// Searches μ: H → roots of unity of order dividing m·|H| with μ(e) = 1 and
/// ζ(a,b) = μ(a)μ(b)/μ(a+b).  Values are returned in Q(ζ_{m·|H|}).
pub fn coboundary_reduce(
    g: &FiniteAbelianGroup,
    z: &TwoCocycle,
) -> Result<Option<BTreeMap<GroupElement, CycloScalar>>> {
    check_subgroup(g, &z.subgroup)?;
    let m = z.conductor().unwrap_or(1);
    let big = m * z.subgroup.len() as u32;
    let mut table = BTreeMap::new();
    for a in &z.subgroup {
        for b in &z.subgroup {
            table.insert((a.clone(), b.clone()), z.get(a, b)?.embed(big)?);
        }
    }
    let roots: Vec<CycloScalar> = (0..big as i64).map(|k| root_of_unity(big, k)).collect();
    let mut order = z.subgroup.clone();
    order.sort();
    let id = g.identity();
    order.retain(|x| *x != id);
    let mut assign: BTreeMap<GroupElement, usize> = BTreeMap::new();
    assign.insert(id.clone(), 0);

    fn consistent(
        g: &FiniteAbelianGroup,
        assign: &BTreeMap<GroupElement, usize>,
        table: &BTreeMap<(GroupElement, GroupElement), CycloScalar>,
        roots: &[CycloScalar],
        big: usize,
    ) -> bool {
        for (a, &ka) in assign {
            for (b, &kb) in assign {
                if let Some(&kab) = assign.get(&g.add(a, b)) {
                    let k = (ka + kb + big - kab) % big;
                    if roots[k] != table[&(a.clone(), b.clone())] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(
        i: usize,
        order: &[GroupElement],
        g: &FiniteAbelianGroup,
        assign: &mut BTreeMap<GroupElement, usize>,
        table: &BTreeMap<(GroupElement, GroupElement), CycloScalar>,
        roots: &[CycloScalar],
    ) -> bool {
        if !consistent(g, assign, table, roots, roots.len()) {
            return false;
        }
        if i == order.len() {
            return true;
        }
        for k in 0..roots.len() {
            assign.insert(order[i].clone(), k);
            if search(i + 1, order, g, assign, table, roots) {
                return true;
            }
        }
        assign.remove(&order[i]);
        false
    }

    if search(0, &order, g, &mut assign, &table, &roots) {
        Ok(Some(assign.into_iter().map(|(h, k)| (h, roots[k].clone())).collect()))
    } else {
        Ok(None)
    }
}

/// χ on Z/4: χ(0) = χ(1) = 0, χ(2) = χ(3) = 1.
pub fn chi4(g: &FiniteAbelianGroup, x: &GroupElement) -> Result<u8> {
    if g.orders() != [4] || !g.contains(x) {
        return Err(Error::WrongGroup(g.orders().to_vec()));
    }
    Ok(if x.0[0] >= 2 { 1 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_elements() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let els = g.elements();
        assert_eq!(els[0], g.identity());
        assert_eq!(els[1], GroupElement(vec![0, 1]));
        assert_eq!(els[3], GroupElement(vec![1, 0]));
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
            assert_eq!(&g.element_at(i), e);
        }
        assert_eq!(g.conductor(), 6);
    }

    #[test]
    fn subgroups_of_small_cyclics() {
        let (subs, chars) = enumerate_subgroups_and_characters(&FiniteAbelianGroup::cyclic(4)).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[1], vec![GroupElement(vec![0]), GroupElement(vec![2])]);
        assert_eq!(chars.len(), 4);
        let (subs, chars) = enumerate_subgroups_and_characters(&FiniteAbelianGroup::cyclic(3)).unwrap();
        assert_eq!((subs.len(), chars.len()), (2, 3));
        let (_, chars) = enumerate_subgroups_and_characters(&FiniteAbelianGroup::cyclic(2)).unwrap();
        assert_eq!(chars.len(), 2);
        let big = FiniteAbelianGroup::new(vec![5, 13]).unwrap();
        assert!(matches!(enumerate_subgroups_and_characters(&big), Err(Error::GroupTooLarge(65, 64))));
    }

    #[test]
    fn klein_four_has_five_subgroups() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(enumerate_subgroups_and_characters(&g).unwrap().0.len(), 5);
    }

    #[test]
    fn element_orders() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.element_order(&GroupElement(vec![2, 0])), 2);
        assert_eq!(g.element_order(&GroupElement(vec![1, 4])), 12);
    }

    #[test]
    fn sign_twist_is_a_coboundary_over_four() {
        let g = FiniteAbelianGroup::cyclic(2);
        let h = g.elements();
        let mut z = TwoCocycle::trivial(h.clone(), 2);
        z.table.insert((h[1].clone(), h[1].clone()), CycloScalar::from_int(2, -1));
        assert_eq!(verify_cocycle(&g, &z).unwrap(), CocycleCheck::Valid);
        let mu = coboundary_reduce(&g, &z).unwrap().unwrap();
        assert_eq!(mu[&h[1]], root_of_unity(4, 1));
    }

    #[test]
    fn perturbed_cocycle_is_rejected() {
        let g = FiniteAbelianGroup::cyclic(3);
        let h = g.elements();
        let mut z = TwoCocycle::trivial(h.clone(), 3);
        z.table.insert((h[1].clone(), h[1].clone()), CycloScalar::from_int(3, 2));
        assert!(matches!(verify_cocycle(&g, &z).unwrap(), CocycleCheck::Invalid(..)));
        z.table.remove(&(h[0].clone(), h[2].clone()));
        assert!(matches!(verify_cocycle(&g, &z), Err(Error::IncompleteTable(..))));
    }

    #[test]
    fn chi4_values() {
        let g = FiniteAbelianGroup::cyclic(4);
        let v: Vec<u8> = g.elements().iter().map(|x| chi4(&g, x).unwrap()).collect();
        assert_eq!(v, vec![0, 0, 1, 1]);
        assert!(chi4(&FiniteAbelianGroup::cyclic(2), &GroupElement(vec![1])).is_err());
    }
}
