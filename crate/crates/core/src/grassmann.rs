//! The symplectic Grassmannian Λ(n, k) and its Plücker embedding.
//!
//! Plücker coordinates are indexed by the k-subsets of the 2n columns in
//! lexicographic order; a point is normalized so its first nonzero
//! coordinate is 1. For an RREF basis the lexicographically first nonzero
//! minor is the pivot minor, which is already 1.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::forms::AlternatingForm;
use crate::gf::Field;
use crate::linalg::{next_combination, normalize, pivot_patterns, rref_in_place, Matrix, SchubertCell, Subspace};

/// All k-subsets of `0..m`, lexicographic.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut c: Vec<usize> = (0..k).collect();
    let mut out = vec![c.clone()];
    while next_combination(&mut c, m) {
        out.push(c.clone());
    }
    out
}

/// Determinant of a small square matrix given row-major in `a`; `a` is clobbered.
fn det_in_place(a: &mut [u8], k: usize, f: &Field) -> u8 {
    let mut det = 1u8;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| a[r * k + c] != 0) else {
            return 0;
        };
        if p != c {
            for j in 0..k {
                a.swap(p * k + j, c * k + j);
            }
            det = f.neg(det);
        }
        let piv = a[c * k + c];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("nonzero pivot");
        for r in c + 1..k {
            let e = a[r * k + c];
            if e != 0 {
                let factor = f.neg(f.mul(e, inv));
                for j in c..k {
                    let v = f.add(a[r * k + j], f.mul(factor, a[c * k + j]));
                    a[r * k + j] = v;
                }
            }
        }
    }
    det
}

/// A normalized Plücker coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerPoint {
    coords: Vec<u8>,
}

impl PluckerPoint {
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }
}

/// Precomputed minor index for k-subspaces of V(m, q).
#[derive(Clone, Debug)]
pub struct PluckerMap {
    k: usize,
    subsets: Vec<Vec<usize>>,
}

impl PluckerMap {
    pub fn new(ambient: usize, k: usize) -> Self {
        PluckerMap {
            k,
            subsets: k_subsets(ambient, k),
        }
    }

    /// Number of coordinates, C(m, k).
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Position of a sorted k-subset in the coordinate order.
    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        self.subsets.binary_search_by(|s| s.as_slice().cmp(subset)).ok()
    }

    /// Writes the unnormalized k x k minors of `basis` into `out`.
    pub fn minors_into(&self, basis: &Matrix, f: &Field, out: &mut [u8]) {
        let k = self.k;
        debug_assert_eq!(basis.rows(), k);
        match k {
            0 => out[0] = 1,
            1 => out.copy_from_slice(basis.row(0)),
            2 => {
                let (a, b) = (basis.row(0), basis.row(1));
                for (o, s) in out.iter_mut().zip(&self.subsets) {
                    let (i, j) = (s[0], s[1]);
                    *o = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
                }
            }
            _ => {
                let mut scratch = vec![0u8; k * k];
                for (o, s) in out.iter_mut().zip(&self.subsets) {
                    for r in 0..k {
                        let row = basis.row(r);
                        for (t, &c) in s.iter().enumerate() {
                            scratch[r * k + t] = row[c];
                        }
                    }
                    *o = det_in_place(&mut scratch, k, f);
                }
            }
        }
    }

    pub fn point(&self, s: &Subspace, f: &Field) -> PluckerPoint {
        let mut coords = vec![0u8; self.len()];
        self.minors_into(s.basis(), f, &mut coords);
        normalize(&mut coords, f);
        PluckerPoint { coords }
    }
}

/// Plücker point of a k-dimensional subspace.
pub fn plucker(s: &Subspace, f: &Field) -> PluckerPoint {
    PluckerMap::new(s.ambient_dim(), s.dim()).point(s, f)
}

/// Backtracking over one Schubert cell: rows are filled top to bottom, and
/// the free entries of each new row are the solutions of the linear system
/// "orthogonal to every row placed so far".
struct IsotropicSearch<'a> {
    f: &'a Field,
    gram: &'a Matrix,
    pivots: Vec<usize>,
    free: Vec<Vec<usize>>,
    m: Matrix,
    // row_j^T G for each placed row
    w: Vec<Vec<u8>>,
}

impl IsotropicSearch<'_> {
    fn row_times_gram(&self, i: usize) -> Vec<u8> {
        let d = self.m.cols();
        let mut out = vec![0u8; d];
        for (c, &x) in self.m.row(i).iter().enumerate() {
            if x != 0 {
                crate::linalg::axpy(&mut out, self.gram.row(c), x, self.f);
            }
        }
        out
    }

    fn place(&mut self, i: usize, visit: &mut dyn FnMut(&Matrix)) {
        let k = self.pivots.len();
        if i == k {
            visit(&self.m);
            return;
        }
        let f = self.f;
        let p = self.pivots[i];
        let cols = self.free[i].clone();
        let nv = cols.len();
        // system: sum_c x_c w_j[c] = -w_j[p]  for j < i
        let mut sys = Matrix::zeros(i, nv + 1);
        for j in 0..i {
            for (t, &c) in cols.iter().enumerate() {
                sys.set(j, t, self.w[j][c]);
            }
            sys.set(j, nv, f.neg(self.w[j][p]));
        }
        let sys_pivots = rref_in_place(&mut sys, f);
        if sys_pivots.last() == Some(&nv) {
            return;
        }
        let bound: Vec<usize> = sys_pivots.clone();
        let unbound: Vec<usize> = (0..nv).filter(|t| !bound.contains(t)).collect();
        let q = f.order() as u8;
        let mut assign = vec![0u8; unbound.len()];
        loop {
            let mut x = vec![0u8; nv];
            for (&t, &a) in unbound.iter().zip(&assign) {
                x[t] = a;
            }
            for (r, &t) in bound.iter().enumerate() {
                let mut v = sys.get(r, nv);
                for &u in &unbound {
                    v = f.sub(v, f.mul(sys.get(r, u), x[u]));
                }
                x[t] = v;
            }
            for (&c, &v) in cols.iter().zip(&x) {
                self.m.set(i, c, v);
            }
            let wi = self.row_times_gram(i);
            self.w.push(wi);
            self.place(i + 1, visit);
            self.w.pop();

            let mut t = 0;
            loop {
                if t == assign.len() {
                    for &c in &cols {
                        self.m.set(i, c, 0);
                    }
                    return;
                }
                assign[t] += 1;
                if assign[t] == q {
                    assign[t] = 0;
                    t += 1;
                } else {
                    break;
                }
            }
        }
    }
}

/// Visits the RREF basis of every k-subspace totally isotropic for `form`.
pub fn for_each_isotropic(form: &AlternatingForm, k: usize, f: &Field, mut visit: impl FnMut(&Matrix)) {
    let d = form.dim();
    for pivots in pivot_patterns(d, k) {
        let cell = SchubertCell::new(pivots.clone(), d);
        let mut free = vec![Vec::new(); k];
        for &(r, c) in &cell.free {
            free[r].push(c);
        }
        let mut search = IsotropicSearch {
            f,
            gram: form.gram(),
            pivots,
            free,
            m: cell.base(),
            w: Vec::with_capacity(k),
        };
        search.place(0, &mut visit);
    }
}

pub fn isotropic_subspaces(form: &AlternatingForm, k: usize, f: &Field) -> Vec<Subspace> {
    let mut out = Vec::new();
    for_each_isotropic(form, k, f, |m| out.push(Subspace::from_rref(m.clone())));
    out
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    Ok(())
}

/// Points of Λ(n, k) for the standard symplectic form, in enumeration order.
pub fn enumerate_isotropic(n: usize, k: usize, f: &Field) -> Result<Vec<Subspace>> {
    check_nk(n, k)?;
    Ok(isotropic_subspaces(&AlternatingForm::standard(n, f), k, f))
}

/// A line of Λ(n, k): `{X : W <= X <= T, dim X = k}` with T totally
/// isotropic, or for k = n `{X : W <= X, dim X = n}` (`top` is `None`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannLine {
    pub w: Subspace,
    pub top: Option<Subspace>,
}

impl GrassmannLine {
    /// The q + 1 points of the line, as totally isotropic k-subspaces.
    pub fn members(&self, sigma: &AlternatingForm, f: &Field) -> Vec<Subspace> {
        let top = match &self.top {
            Some(t) => t.clone(),
            // every maximal isotropic space through W lies in W^⊥
            None => sigma.perp(&self.w, f),
        };
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in top.points(f) {
            if self.w.contains(&v, f) {
                continue;
            }
            let y = self.w.extend(&v, f);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        out
    }
}

/// All lines of Λ(n, k) through the point `x`.
pub fn grassmann_lines_through(n: usize, k: usize, f: &Field, x: &Subspace) -> Result<Vec<GrassmannLine>> {
    check_nk(n, k)?;
    let sigma = AlternatingForm::standard(n, f);
    if x.dim() != k || x.ambient_dim() != 2 * n || !sigma.is_totally_isotropic(x, f) {
        return Err(Error::Domain("not a point of the symplectic Grassmannian".into()));
    }
    let hyperplanes = x.subspaces(k - 1, f);
    if k == n {
        return Ok(hyperplanes
            .into_iter()
            .map(|w| GrassmannLine { w, top: None })
            .collect());
    }
    let perp = sigma.perp(x, f);
    let mut tops = Vec::new();
    let mut seen = HashSet::new();
    for v in perp.points(f) {
        if x.contains(&v, f) {
            continue;
        }
        let t = x.extend(&v, f);
        if seen.insert(t.clone()) {
            tops.push(t);
        }
    }
    Ok(hyperplanes
        .iter()
        .flat_map(|w| {
            tops.iter().map(move |t| GrassmannLine {
                w: w.clone(),
                top: Some(t.clone()),
            })
        })
        .collect())
}

/// Every line of Λ(n, k), each once.
pub fn enumerate_lines(n: usize, k: usize, f: &Field) -> Result<Vec<GrassmannLine>> {
    check_nk(n, k)?;
    let sigma = AlternatingForm::standard(n, f);
    let mut out = Vec::new();
    if k == n {
        for_each_isotropic(&sigma, n - 1, f, |m| {
            out.push(GrassmannLine {
                w: Subspace::from_rref(m.clone()),
                top: None,
            })
        });
    } else {
        for_each_isotropic(&sigma, k + 1, f, |m| {
            let t = Subspace::from_rref(m.clone());
            for w in t.subspaces(k - 1, f) {
                out.push(GrassmannLine {
                    w,
                    top: Some(t.clone()),
                });
            }
        });
    }
    Ok(out)
}
