//! Exact linear algebra over Q(ζ_m): dense and sparse vectors, incremental
//! reduced row echelon form, subspaces, inversion.
//!
//! Pivoting always takes the first nonzero coordinate.

use std::collections::BTreeMap;

use crate::cyclo::CycloScalar;

/// A dense coefficient vector.
pub type Element = Vec<CycloScalar>;

/// A sparse vector: strictly increasing indices, no zero entries.
pub type SparseVec = Vec<(usize, CycloScalar)>;

pub fn zero_vec(n: usize, m: u32) -> Element {
    vec![CycloScalar::zero(m); n]
}

pub fn unit_vec(n: usize, i: usize, m: u32) -> Element {
    let mut v = zero_vec(n, m);
    v[i] = CycloScalar::one(m);
    v
}

pub fn is_zero_vec(v: &[CycloScalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec(a: &[CycloScalar], b: &[CycloScalar]) -> Element {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[CycloScalar], b: &[CycloScalar]) -> Element {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[CycloScalar], c: &CycloScalar) -> Element {
    a.iter().map(|x| if x.is_zero() { x.clone() } else { x * c }).collect()
}

/// y += c·x
pub fn axpy(y: &mut [CycloScalar], c: &CycloScalar, x: &[CycloScalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

pub fn to_sparse(v: &[CycloScalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, n: usize, m: u32) -> Element {
    let mut out = zero_vec(n, m);
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// If `v = c·w` for a scalar c, returns c.  Zero `v` gives c = 0.
pub fn proportional(v: &[CycloScalar], w: &[CycloScalar]) -> Option<CycloScalar> {
    let pivot = w.iter().position(|x| !x.is_zero())?;
    let c = v[pivot].checked_div(&w[pivot]).ok()?;
    for (a, b) in v.iter().zip(w) {
        if *a != &c * b {
            return None;
        }
    }
    Some(c)
}

fn sparse_get(v: &SparseVec, i: usize) -> Option<&CycloScalar> {
    v.binary_search_by_key(&i, |(k, _)| *k).ok().map(|p| &v[p].1)
}

/// Incremental reduced row echelon form with sparse rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    m: u32,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize, m: u32) -> Self {
        Echelon { ncols, m, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, &CycloScalar)> = v
            .iter()
            .filter_map(|(i, x)| self.pivots.get(i).map(|&r| (r, x)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, CycloScalar> = v.iter().cloned().collect();
        for (r, c) in hits {
            for (j, y) in &self.rows[r] {
                let t = c * y;
                match acc.get_mut(j) {
                    Some(e) => *e -= &t,
                    None => {
                        acc.insert(*j, -t);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns false when it was already there.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (p, lead) = (r[0].0, r[0].1.clone());
        let inv = lead.inv().expect("nonzero pivot");
        let r: SparseVec = r.into_iter().map(|(i, x)| (i, &x * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Some(c) = sparse_get(row, p).cloned() {
                let mut acc: BTreeMap<usize, CycloScalar> = row.drain(..).collect();
                for (j, y) in &r {
                    let t = &c * y;
                    match acc.get_mut(j) {
                        Some(e) => *e -= &t,
                        None => {
                            acc.insert(*j, -t);
                        }
                    }
                }
                *row = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<SparseVec> {
        self.pivots.values().map(|&r| self.rows[r].clone()).collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().cloned().collect()
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }
}

/// A subspace of an n-dimensional coordinate space, kept in canonical
/// reduced echelon form so equality of subspaces is equality of matrices.
#[derive(Clone, Debug)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn zero(n: usize, m: u32) -> Self {
        Subspace { ech: Echelon::new(n, m) }
    }

    pub fn full(n: usize, m: u32) -> Self {
        let mut s = Self::zero(n, m);
        for i in 0..n {
            s.insert(&unit_vec(n, i, m));
        }
        s
    }

    pub fn spanned_by<'a, I: IntoIterator<Item = &'a Element>>(n: usize, m: u32, vs: I) -> Self {
        let mut s = Self::zero(n, m);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.ncols()
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn conductor(&self) -> u32 {
        self.ech.conductor()
    }

    pub fn insert(&mut self, v: &[CycloScalar]) -> bool {
        self.ech.insert(&to_sparse(v))
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        self.ech.contains(&to_sparse(v))
    }

    pub fn reduce(&self, v: &[CycloScalar]) -> Element {
        to_dense(&self.ech.reduce(&to_sparse(v)), self.ambient_dim(), self.conductor())
    }

    /// Basis rows in canonical echelon order.
    pub fn rows(&self) -> Vec<Element> {
        self.ech
            .sorted_rows()
            .iter()
            .map(|r| to_dense(r, self.ambient_dim(), self.conductor()))
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.ech.pivot_columns()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows().iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in other.rows() {
            s.insert(&r);
        }
        s
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.rows() == other.rows()
    }
}

impl Eq for Subspace {}

/// Dense square matrix inverse by Gauss-Jordan elimination.  `rows[i][j]`
/// is the entry in row i, column j.
pub fn invert(rows: &[Element], m: u32) -> Option<Vec<Element>> {
    let n = rows.len();
    let mut a: Vec<Element> = rows.to_vec();
    let mut inv: Vec<Element> = (0..n).map(|i| unit_vec(n, i, m)).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let c = a[col][col].inv().ok()?;
        a[col] = scale_vec(&a[col], &c);
        inv[col] = scale_vec(&inv[col], &c);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let (ar, ac) = (a[r].clone(), a[col].clone());
                a[r] = sub_vec(&ar, &scale_vec(&ac, &f));
                let (ir, ic) = (inv[r].clone(), inv[col].clone());
                inv[r] = sub_vec(&ir, &scale_vec(&ic, &f));
            }
        }
    }
    Some(inv)
}

/// Coordinates of vectors with respect to a fixed basis of the whole space.
#[derive(Clone, Debug)]
pub struct Coordinates {
    /// inverse[i] = coordinates of the i-th standard vector.
    inverse: Vec<Element>,
    m: u32,
}

impl Coordinates {
    /// `basis` must consist of n independent vectors in an n-dimensional
    /// space.
    pub fn new(basis: &[Element], m: u32) -> Option<Self> {
        let n = basis.len();
        if n == 0 {
            return Some(Coordinates { inverse: Vec::new(), m });
        }
        if basis.iter().any(|b| b.len() != n) {
            return None;
        }
        // Columns of the change-of-basis matrix are the basis vectors.
        let mat: Vec<Element> = (0..n).map(|i| (0..n).map(|j| basis[j][i].clone()).collect()).collect();
        let inv = invert(&mat, m)?;
        // inv[k][i] is the k-th coordinate of e_i.
        let inverse = (0..n).map(|i| (0..n).map(|k| inv[k][i].clone()).collect()).collect();
        Some(Coordinates { inverse, m })
    }

    pub fn coords(&self, v: &[CycloScalar]) -> Element {
        let n = self.inverse.len();
        let mut out = zero_vec(n, self.m);
        for (i, x) in v.iter().enumerate() {
            axpy(&mut out, x, &self.inverse[i]);
        }
        out
    }
}

/// Expresses vectors as combinations of a fixed list of (possibly
/// dependent) vectors, by elimination on the augmented rows (b_k | e_k).
#[derive(Clone, Debug)]
pub struct SpanSolver {
    n: usize,
    count: usize,
    m: u32,
    ech: Echelon,
}

impl SpanSolver {
    pub fn new(vectors: &[Element], n: usize, m: u32) -> Self {
        let count = vectors.len();
        let mut ech = Echelon::new(n + count, m);
        for (k, v) in vectors.iter().enumerate() {
            let mut row = to_sparse(v);
            row.push((n + k, CycloScalar::one(m)));
            ech.insert(&row);
        }
        SpanSolver { n, count, m, ech }
    }

    /// Rank of the stored family.
    pub fn rank(&self) -> usize {
        self.ech.pivot_columns().iter().filter(|&&p| p < self.n).count()
    }

    /// Coefficients c with Σ c_k b_k = v, or None when v is outside the span.
    pub fn solve(&self, v: &[CycloScalar]) -> Option<Element> {
        let r = self.ech.reduce(&to_sparse(v));
        if r.iter().any(|(i, _)| *i < self.n) {
            return None;
        }
        let mut out = zero_vec(self.count, self.m);
        for (i, x) in r {
            out[i - self.n] = -x;
        }
        Some(out)
    }
}

/// Basis of {c : Σ c_k images[k] = 0}, where every image has length
/// `n_out`.  Returned in echelon form.
pub fn kernel(images: &[Element], n_out: usize, m: u32) -> Vec<Element> {
    let count = images.len();
    let mut ech = Echelon::new(n_out + count, m);
    for (k, v) in images.iter().enumerate() {
        let mut row = to_sparse(v);
        row.push((n_out + k, CycloScalar::one(m)));
        ech.insert(&row);
    }
    ech.sorted_rows()
        .into_iter()
        .filter(|r| r[0].0 >= n_out)
        .map(|r| {
            let mut out = zero_vec(count, m);
            for (i, x) in r {
                out[i - n_out] = x;
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_dependent_images() {
        // 2·e0 + e1 − e2 maps to zero.
        let k = kernel(&[v(&[1, 0]), v(&[0, 1]), v(&[2, 1])], 2, 1);
        assert_eq!(k.len(), 1);
        assert!(proportional(&k[0], &v(&[2, 1, -1])).is_some());
        assert!(kernel(&[v(&[1, 0])], 2, 1).is_empty());
    }

    #[test]
    fn span_solver_finds_combinations() {
        let s = SpanSolver::new(&[v(&[1, 1, 0]), v(&[0, 1, 1])], 3, 1);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.solve(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(s.solve(&v(&[0, 0, 1])), None);
    }

    fn v(xs: &[i64]) -> Element {
        xs.iter().map(|&x| CycloScalar::from_int(1, x)).collect()
    }

    #[test]
    fn echelon_is_canonical() {
        let a = Subspace::spanned_by(3, 1, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::spanned_by(3, 1, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.rows(), vec![v(&[1, 0, -1]), v(&[0, 1, 1])]);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn inverse_and_coordinates() {
        let basis = vec![v(&[1, 1]), v(&[1, -1])];
        let c = Coordinates::new(&basis, 1).unwrap();
        let x = c.coords(&v(&[3, 1]));
        assert_eq!(x, v(&[2, 1]));
        assert!(Coordinates::new(&[v(&[1, 1]), v(&[2, 2])], 1).is_none());
    }

    #[test]
    fn proportionality() {
        assert_eq!(proportional(&v(&[2, 4]), &v(&[1, 2])), Some(CycloScalar::from_int(1, 2)));
        assert_eq!(proportional(&v(&[2, 3]), &v(&[1, 2])), None);
    }
}
