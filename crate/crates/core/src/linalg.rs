//! Dense matrices over GF(q), row reduction, and subspaces in canonical form.
//!
//! A subspace is always stored as the reduced row echelon basis of its row
//! space, so two subspaces are equal exactly when their bases are equal.
//! Coordinates of V(m, q) are the standard basis e_1, ..., e_m in that order.

use crate::error::{Error, Result};
use crate::gf::Field;

/// Row-major matrix of raw field encodings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Checks every entry is a valid encoding in GF(q).
    pub fn check_entries(&self, field: &Field) -> Result<()> {
        match self.data.iter().find(|&&x| x as u32 >= field.order()) {
            Some(x) => Err(Error::Domain(format!(
                "entry {x} is not an element of GF({})",
                field.order()
            ))),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn push_row(&mut self, row: &[u8]) -> Result<()> {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "row of length {} pushed onto a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a != 0 {
                    axpy(out.row_mut(i), other.row(t), a, f);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u8], f: &Field) -> Vec<u8> {
        self.row_iter().map(|r| dot(r, v, f)).collect()
    }

    /// `self - lambda * I`.
    pub fn shift_diagonal(&self, lambda: u8, f: &Field) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = f.sub(m.get(i, i), lambda);
            m.set(i, i, v);
        }
        m
    }
}

/// `dst += c * src`, entrywise.
#[inline]
pub fn axpy(dst: &mut [u8], src: &[u8], c: u8, f: &Field) {
    let mul = f.mul_row(c);
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, mul[s as usize]);
    }
}

#[inline]
pub fn dot(a: &[u8], b: &[u8], f: &Field) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
pub fn normalize(v: &mut [u8], f: &Field) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let s = f.inv(lead).expect("nonzero");
        let mul = f.mul_row(s);
        for x in v.iter_mut() {
            *x = mul[*x as usize];
        }
    }
    true
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces `m` in place and returns its pivot columns.
pub fn rref_in_place(m: &mut Matrix, f: &Field) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let s = f.inv(m.get(r, c)).expect("pivot is nonzero");
        if s != 1 {
            let mul = f.mul_row(s);
            for x in m.row_mut(r)[c..].iter_mut() {
                *x = mul[*x as usize];
            }
        }
        let (head, tail) = m.data.split_at_mut(r * cols);
        let (prow, rest) = tail.split_at_mut(cols);
        for other in head.chunks_exact_mut(cols).chain(rest.chunks_exact_mut(cols)) {
            let e = other[c];
            if e != 0 {
                axpy(&mut other[c..], &prow[c..], f.neg(e), f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form of `m`, its rank and pivot columns.
pub fn rref(m: &Matrix, f: &Field) -> Rref {
    let mut matrix = m.clone();
    let pivots = rref_in_place(&mut matrix, f);
    Rref {
        matrix,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &Matrix, f: &Field) -> usize {
    if f.order() == 2 {
        return crate::bitmat::BitMatrix::from_matrix(m).rank();
    }
    rref(m, f).rank
}

/// Solution space of `m x = 0`.
pub fn kernel(m: &Matrix, f: &Field) -> Subspace {
    let Rref { matrix, pivots, .. } = rref(m, f);
    let cols = m.cols;
    let mut basis = Matrix::zeros(0, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut v = vec![0u8; cols];
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        v.fill(0);
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(matrix.get(r, free));
        }
        basis.push_row(&v).expect("width");
    }
    Subspace::span(&basis, f)
}

/// Inverse of a square matrix.
pub fn inverse(m: &Matrix, f: &Field) -> Result<Matrix> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!("{}x{} is not square", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        aug.row_mut(i)[..n].copy_from_slice(m.row(i));
        aug.set(i, n + i, 1);
    }
    let pivots = rref_in_place(&mut aug, f);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Domain("matrix is singular".into()));
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
    }
    Ok(inv)
}

/// Incrementally built basis kept in reduced row echelon form. Membership
/// of a new vector only needs the non-pivot columns, since each basis row is
/// zero on every other pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
    scratch: Vec<u8>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; dim],
            scratch: vec![0; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u8], f: &Field) -> bool {
        if self.rows.len() == self.dim {
            return false;
        }
        let res = &mut self.scratch;
        res.copy_from_slice(v);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            let m = f.mul_row(f.neg(c));
            for (j, (x, &b)) in res.iter_mut().zip(row).enumerate() {
                if !self.is_pivot[j] {
                    *x = f.add(*x, m[b as usize]);
                }
            }
        }
        let Some(p) = (0..self.dim).find(|&j| !self.is_pivot[j] && res[j] != 0) else {
            return false;
        };
        for &q in &self.pivots {
            res[q] = 0;
        }
        let mut new = res.clone();
        normalize(&mut new, f);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                axpy(row, &new, f.neg(c), f);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, new);
        self.is_pivot[p] = true;
        true
    }

    /// The basis as a matrix in reduced row echelon form.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(0, self.dim);
        for r in &self.rows {
            m.push_row(r).expect("width");
        }
        m
    }
}

/// A subspace of V(m, q), held as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    /// Row space of `rows`.
    pub fn span(rows: &Matrix, f: &Field) -> Subspace {
        let Rref { mut matrix, rank, .. } = rref(rows, f);
        matrix.data.truncate(rank * matrix.cols);
        matrix.rows = rank;
        Subspace {
            ambient_dim: rows.cols,
            basis: matrix,
        }
    }

    /// Wraps a basis already known to be in reduced row echelon form.
    pub(crate) fn from_rref(basis: Matrix) -> Subspace {
        Subspace {
            ambient_dim: basis.cols,
            basis,
        }
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[u8], f: &Field) -> bool {
        // reduce v against the echelon basis
        let mut w = v.to_vec();
        for r in self.basis.row_iter() {
            let p = r.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let c = w[p];
            if c != 0 {
                axpy(&mut w, r, f.neg(c), f);
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: &Field) -> bool {
        self.basis.row_iter().all(|r| other.contains(r, f))
    }

    /// The sum `self + other`.
    pub fn join(&self, other: &Subspace, f: &Field) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis).expect("same ambient"), f)
    }

    /// The subspace spanned by `self` and one more vector.
    pub fn extend(&self, v: &[u8], f: &Field) -> Subspace {
        let mut m = self.basis.clone();
        m.push_row(v).expect("same ambient");
        Subspace::span(&m, f)
    }

    /// `coeffs * basis`.
    pub fn combine(&self, coeffs: &[u8], f: &Field) -> Vec<u8> {
        let mut v = vec![0u8; self.ambient_dim];
        for (r, &c) in self.basis.row_iter().zip(coeffs) {
            if c != 0 {
                axpy(&mut v, r, c, f);
            }
        }
        v
    }

    /// Normalized representatives of the projective points of this subspace.
    pub fn points(&self, f: &Field) -> Vec<Vec<u8>> {
        ProjectivePoints::new(self.dim(), f)
            .map(|c| self.combine(&c, f))
            .collect()
    }

    /// All subspaces of `self` of dimension `k`.
    pub fn subspaces(&self, k: usize, f: &Field) -> Vec<Subspace> {
        Subspaces::new(self.dim(), k, f)
            .map(|s| {
                let m = s.basis.mul(&self.basis, f).expect("shapes");
                Subspace::span(&m, f)
            })
            .collect()
    }
}

/// Advances `c` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Cell of the Grassmannian with fixed pivot columns: the RREF matrices
/// whose free entries sit right of each row's pivot, off the other pivots.
#[derive(Clone, Debug)]
pub struct SchubertCell {
    pub pivots: Vec<usize>,
    pub free: Vec<(usize, usize)>,
    ambient: usize,
}

impl SchubertCell {
    pub fn new(pivots: Vec<usize>, ambient: usize) -> Self {
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let piv = &pivots;
                (p + 1..ambient).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        SchubertCell { pivots, free, ambient }
    }

    /// Matrix with the pivot identity and all free entries zero.
    pub fn base(&self) -> Matrix {
        let mut m = Matrix::zeros(self.pivots.len(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, 1);
        }
        m
    }

    /// Visits every matrix of the cell, reusing one buffer.
    pub fn for_each(&self, q: u8, mut visit: impl FnMut(&Matrix)) {
        let mut m = self.base();
        let mut counter = vec![0u8; self.free.len()];
        loop {
            visit(&m);
            let mut i = 0;
            loop {
                if i == counter.len() {
                    return;
                }
                let (r, c) = self.free[i];
                counter[i] += 1;
                if counter[i] == q {
                    counter[i] = 0;
                    m.set(r, c, 0);
                    i += 1;
                } else {
                    m.set(r, c, counter[i]);
                    break;
                }
            }
        }
    }
}

/// Pivot patterns of k-subspaces of V(ambient, q), lexicographic.
pub fn pivot_patterns(ambient: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state = (k <= ambient).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = state.clone()?;
        let mut next = cur.clone();
        state = next_combination(&mut next, ambient).then_some(next);
        Some(cur)
    })
}

/// Calls `visit` once per k-subspace of V(ambient, q) with its RREF basis.
pub fn for_each_subspace(ambient: usize, k: usize, f: &Field, mut visit: impl FnMut(&Matrix)) {
    for pivots in pivot_patterns(ambient, k) {
        SchubertCell::new(pivots, ambient).for_each(f.order() as u8, &mut visit);
    }
}

/// Stream of all k-subspaces of V(ambient, q), each exactly once.
pub struct Subspaces {
    ambient: usize,
    q: u8,
    patterns: Box<dyn Iterator<Item = Vec<usize>>>,
    cell: Option<SchubertCell>,
    current: Matrix,
    counter: Vec<u8>,
    pending: bool,
}

impl Subspaces {
    pub fn new(ambient: usize, k: usize, f: &Field) -> Self {
        let mut s = Subspaces {
            ambient,
            q: f.order() as u8,
            patterns: Box::new(pivot_patterns(ambient, k)),
            cell: None,
            current: Matrix::zeros(0, ambient),
            counter: Vec::new(),
            pending: false,
        };
        s.open_next_cell();
        s
    }

    fn open_next_cell(&mut self) {
        self.cell = self.patterns.next().map(|p| SchubertCell::new(p, self.ambient));
        if let Some(cell) = &self.cell {
            self.current = cell.base();
            self.counter = vec![0; cell.free.len()];
            self.pending = true;
        }
    }
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            let cell = self.cell.as_ref()?;
            if self.pending {
                self.pending = false;
                return Some(Subspace::from_rref(self.current.clone()));
            }
            // advance the free-entry counter
            let mut i = 0;
            while i < self.counter.len() {
                let (r, c) = cell.free[i];
                self.counter[i] += 1;
                if self.counter[i] == self.q {
                    self.counter[i] = 0;
                    self.current.set(r, c, 0);
                    i += 1;
                } else {
                    self.current.set(r, c, self.counter[i]);
                    break;
                }
            }
            if i == self.counter.len() {
                self.open_next_cell();
            } else {
                self.pending = true;
            }
        }
    }
}

/// Stream of normalized representatives of the points of PG(d-1, q), in the
/// same order as the 1-dimensional subspaces from [`Subspaces`].
pub struct ProjectivePoints {
    d: usize,
    q: u8,
    current: Vec<u8>,
    lead: usize,
    started: bool,
}

impl ProjectivePoints {
    pub fn new(d: usize, f: &Field) -> Self {
        ProjectivePoints {
            d,
            q: f.order() as u8,
            current: vec![0; d],
            lead: 0,
            started: false,
        }
    }
}

impl Iterator for ProjectivePoints {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.lead >= self.d {
            return None;
        }
        if !self.started {
            self.started = true;
            self.current[self.lead] = 1;
            return Some(self.current.clone());
        }
        // digit after the lead varies fastest, matching the Schubert cell order
        let mut i = self.lead + 1;
        loop {
            if i == self.d {
                self.current[self.lead] = 0;
                self.lead += 1;
                if self.lead >= self.d {
                    return None;
                }
                self.current[self.lead] = 1;
                return Some(self.current.clone());
            }
            self.current[i] += 1;
            if self.current[i] == self.q {
                self.current[i] = 0;
                i += 1;
            } else {
                return Some(self.current.clone());
            }
        }
    }
}

pub fn enumerate_subspaces(ambient: usize, k: usize, f: &Field) -> Subspaces {
    Subspaces::new(ambient, k, f)
}

pub fn enumerate_projective_points(d: usize, f: &Field) -> ProjectivePoints {
    ProjectivePoints::new(d, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn m(rows: &[&[u8]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = gf(2);
        let r = rref(&Matrix::identity(3), &f2);
        assert_eq!((r.matrix, r.rank), (Matrix::identity(3), 3));
        let r = rref(&Matrix::zeros(2, 4), &f2);
        assert_eq!((r.matrix, r.rank), (Matrix::zeros(2, 4), 0));
        let f3 = gf(3);
        let r = rref(&m(&[&[1, 2], &[2, 1]]), &f3);
        // det = 1 - 4 = 0 mod 3: the rows are dependent
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_gf3_full_rank_example() {
        // [[1,2],[2,2]]: det = 2 - 4 = -2 = 1 mod 3
        let r = rref(&m(&[&[1, 2], &[2, 2]]), &gf(3));
        assert_eq!((r.matrix, r.rank), (Matrix::identity(2), 2));
    }

    #[test]
    fn kernel_examples() {
        let f2 = gf(2);
        assert_eq!(kernel(&Matrix::identity(3), &f2).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(3, 3), &f2), Subspace::full(3));
        let k = kernel(&m(&[&[1, 1]]), &f2);
        assert_eq!(k.basis(), &m(&[&[1, 1]]));
        // exhaustive check of the 4 vectors
        for v in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(k.contains(&v, &f2), v[0] == v[1]);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f5 = gf(5);
        let a = m(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 2]]);
        let inv = inverse(&a, &f5).unwrap();
        assert_eq!(a.mul(&inv, &f5).unwrap(), Matrix::identity(3));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]]), &f5).is_err());
        assert!(inverse(&Matrix::zeros(2, 3), &f5).is_err());
    }

    #[test]
    fn subspace_counts() {
        let f2 = gf(2);
        assert_eq!(enumerate_subspaces(2, 1, &f2).count(), 3);
        assert_eq!(enumerate_subspaces(4, 2, &f2).count(), 35);
        assert_eq!(enumerate_subspaces(5, 0, &gf(3)).count(), 1);
        assert_eq!(enumerate_subspaces(3, 3, &gf(7)).count(), 1);
        let pts: Vec<_> = enumerate_projective_points(2, &f2).collect();
        assert_eq!(pts, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(enumerate_projective_points(4, &gf(3)).count(), 40);
        assert_eq!(enumerate_projective_points(1, &gf(5)).count(), 1);
    }

    #[test]
    fn points_match_one_dimensional_subspaces() {
        let f = gf(4);
        let a: Vec<Vec<u8>> = enumerate_subspaces(3, 1, &f)
            .map(|s| s.basis().row(0).to_vec())
            .collect();
        let b: Vec<Vec<u8>> = enumerate_projective_points(3, &f).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn enumerated_subspaces_are_distinct_and_canonical() {
        let f3 = gf(3);
        let all: Vec<Subspace> = enumerate_subspaces(4, 2, &f3).collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(&Subspace::span(s.basis(), &f3), s);
        }
    }

    #[test]
    fn subspace_operations() {
        let f = gf(3);
        let a = Subspace::span(&m(&[&[1, 0, 0, 0]]), &f);
        let b = Subspace::span(&m(&[&[0, 1, 0, 0]]), &f);
        let ab = a.join(&b, &f);
        assert_eq!(ab.dim(), 2);
        assert!(a.is_subspace_of(&ab, &f));
        assert!(!ab.is_subspace_of(&a, &f));
        assert_eq!(ab.points(&f).len(), 4);
        assert_eq!(ab.subspaces(1, &f).len(), 4);
        assert_eq!(a.extend(&[0, 1, 0, 0], &f), ab);
    }
    #[test]
    fn echelon_basis_matches_rref() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for q in [2u32, 3, 4, 7] {
            let f = gf(q);
            for _ in 0..30 {
                let rows: Vec<Vec<u8>> = (0..rng.gen_range(0..10))
                    .map(|_| {
                        (0..6)
                            .map(|_| {
                                if rng.gen_bool(0.4) {
                                    rng.gen_range(0..q) as u8
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                let mut b = EchelonBasis::new(6);
                for r in &rows {
                    b.insert(r, &f);
                }
                let mut m = Matrix::zeros(0, 6);
                for r in &rows {
                    m.push_row(r).unwrap();
                }
                let want = rref(&m, &f);
                assert_eq!(b.rank(), want.rank);
                assert_eq!(&Subspace::span(&m, &f).basis().clone(), &b.to_matrix());
            }
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomial() {
        for q in [2u32, 3] {
            let f = gf(q);
            for ambient in 0..=8 {
                for k in 0..=ambient.min(4) {
                    let mut count = 0u128;
                    for_each_subspace(ambient, k, &f, |_| count += 1);
                    let want = crate::formulas::gaussian_binomial(ambient, k, q as u64).unwrap();
                    assert_eq!(count, want, "[{ambient},{k}]_{q}");
                }
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = (u32, Matrix)> {
        (prop::sample::select(vec![2u32, 3, 4, 5, 9, 16]), 0usize..6, 1usize..7).prop_flat_map(|(q, r, c)| {
            prop::collection::vec(0..q as u8, r * c).prop_map(move |data| (q, Matrix::from_vec(r, c, data).unwrap()))
        })
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rref_is_idempotent((q, a) in arb_matrix()) {
            let f = gf(q);
            let once = rref(&a, &f);
            let twice = rref(&once.matrix, &f);
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.rank, twice.rank);
            prop_assert_eq!(once.pivots.len(), once.rank);
        }

        #[test]
        fn rref_preserves_row_space((q, a) in arb_matrix()) {
            let f = gf(q);
            let r = rref(&a, &f);
            prop_assert_eq!(rank(&a, &f), r.rank);
            prop_assert_eq!(rank(&a.vstack(&r.matrix).unwrap(), &f), r.rank);
            for row in r.matrix.row_iter().skip(r.rank) {
                prop_assert!(row.iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn kernel_dimension((q, a) in arb_matrix()) {
            let f = gf(q);
            let k = kernel(&a, &f);
            prop_assert_eq!(k.dim(), a.cols() - rank(&a, &f));
            for v in k.basis().row_iter() {
                prop_assert!(a.mul_vec(v, &f).iter().all(|&x| x == 0));
            }
        }
    }
}
