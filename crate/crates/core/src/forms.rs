//! Alternating bilinear forms on V(2n, q).
//!
//! σ is a fixed non-degenerate form (Gram matrix M), θ an arbitrary
//! alternating form (Gram matrix S). A point p satisfies p^⊥σ ⊆ p^⊥θ exactly
//! when p is an eigenvector of M⁻¹S, which is what [`count_n1`] exploits;
//! [`count_n1_direct`] checks the inclusion point by point instead.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grassmann::for_each_isotropic;
use crate::linalg::{dot, inverse, kernel, rank, Matrix, ProjectivePoints, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingForm {
    n: usize,
    gram: Matrix,
}

impl AlternatingForm {
    /// Validates a Gram matrix: square of even size, zero diagonal, Sᵀ = -S.
    pub fn new(gram: Matrix, f: &Field) -> Result<Self> {
        let d = gram.rows();
        if gram.cols() != d || !d.is_multiple_of(2) || d == 0 {
            return Err(Error::Dimension(format!(
                "an alternating form on V(2n, q) needs a 2n x 2n Gram matrix, got {}x{}",
                d,
                gram.cols()
            )));
        }
        gram.check_entries(f)?;
        for i in 0..d {
            if gram.get(i, i) != 0 {
                return Err(Error::Domain(format!("diagonal entry {i} is nonzero")));
            }
            for j in i + 1..d {
                if gram.get(j, i) != f.neg(gram.get(i, j)) {
                    return Err(Error::Domain(format!("entries ({i},{j}) and ({j},{i}) are not skew")));
                }
            }
        }
        let form = AlternatingForm { n: d / 2, gram };
        // skew-symmetric with zero diagonal always has even rank
        assert!(form.rank(f).is_multiple_of(2), "alternating form of odd rank");
        Ok(form)
    }

    pub fn zero(n: usize) -> Self {
        AlternatingForm {
            n,
            gram: Matrix::zeros(2 * n, 2 * n),
        }
    }

    /// The form with Gram matrix [[0, I_n], [-I_n, 0]].
    pub fn standard(n: usize, f: &Field) -> Self {
        let mut gram = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            gram.set(i, n + i, 1);
            gram.set(n + i, i, f.neg(1));
        }
        AlternatingForm { n, gram }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension 2n of the underlying space.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// xᵀ G y.
    pub fn eval(&self, x: &[u8], y: &[u8], f: &Field) -> u8 {
        dot(x, &self.gram.mul_vec(y, f), f)
    }

    pub fn rank(&self, f: &Field) -> usize {
        rank(&self.gram, f)
    }

    pub fn is_nondegenerate(&self, f: &Field) -> bool {
        self.rank(f) == self.dim()
    }

    /// `self - lambda * other`.
    pub fn minus_scaled(&self, other: &AlternatingForm, lambda: u8, f: &Field) -> AlternatingForm {
        let d = self.dim();
        let mut gram = self.gram.clone();
        for i in 0..d {
            for j in 0..d {
                gram.set(i, j, f.sub(self.gram.get(i, j), f.mul(lambda, other.gram.get(i, j))));
            }
        }
        AlternatingForm { n: self.n, gram }
    }

    /// `Some(lambda)` when `self = lambda * other`.
    pub fn scalar_multiple_of(&self, other: &AlternatingForm, f: &Field) -> Option<u8> {
        f.elements().find(|&l| self.minus_scaled(other, l, f).gram.is_zero())
    }

    pub fn radical(&self, f: &Field) -> Subspace {
        kernel(&self.gram, f)
    }

    /// `{x : f(s, x) = 0 for all s in s}`.
    pub fn perp(&self, s: &Subspace, f: &Field) -> Subspace {
        if s.dim() == 0 {
            return Subspace::full(self.dim());
        }
        kernel(&s.basis().mul(&self.gram, f).expect("ambient dimension"), f)
    }

    pub fn is_totally_isotropic(&self, s: &Subspace, f: &Field) -> bool {
        let b = s.basis();
        (0..b.rows()).all(|i| (i + 1..b.rows()).all(|j| self.eval(b.row(i), b.row(j), f) == 0))
    }
}

/// Uniform random alternating form: independent uniform entries above the
/// diagonal, zero diagonal, skew below.
pub fn random_alternating<R: Rng + ?Sized>(n: usize, f: &Field, rng: &mut R) -> AlternatingForm {
    let d = 2 * n;
    let mut gram = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let v = rng.gen_range(0..f.order()) as u8;
            gram.set(i, j, v);
            gram.set(j, i, f.neg(v));
        }
    }
    AlternatingForm { n, gram }
}

/// Random alternating form that is not a scalar multiple of `sigma`.
pub fn random_theta_distinct<R: Rng + ?Sized>(sigma: &AlternatingForm, f: &Field, rng: &mut R) -> AlternatingForm {
    loop {
        let t = random_alternating(sigma.n(), f, rng);
        if t.scalar_multiple_of(sigma, f).is_none() {
            return t;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenDecomposition {
    /// Eigenvalue and eigenspace, ascending by eigenvalue encoding.
    pub pairs: Vec<(u8, Subspace)>,
    pub diagonalizable: bool,
}

impl EigenDecomposition {
    /// Eigenspace dimensions, sorted ascending.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pairs.iter().map(|(_, s)| s.dim()).collect();
        d.sort_unstable();
        d
    }

    /// Number of projective points lying in some eigenspace.
    pub fn eigenpoint_count(&self, q: u32) -> u128 {
        let q = q as u128;
        self.pairs
            .iter()
            .map(|(_, s)| (q.pow(s.dim() as u32) - 1) / (q - 1))
            .sum()
    }

    pub fn contains_eigenvector(&self, v: &[u8], f: &Field) -> bool {
        self.pairs.iter().any(|(_, s)| s.contains(v, f))
    }
}

fn require_nondegenerate(sigma: &AlternatingForm, f: &Field) -> Result<Matrix> {
    inverse(sigma.gram(), f).map_err(|_| Error::Domain("sigma is degenerate".into()))
}

fn check_pair(sigma: &AlternatingForm, theta: &AlternatingForm) -> Result<()> {
    if sigma.n() != theta.n() {
        return Err(Error::Dimension(format!(
            "forms on V({}) and V({})",
            sigma.dim(),
            theta.dim()
        )));
    }
    Ok(())
}

/// Eigenspaces of M⁻¹S, found by sweeping every λ in GF(q).
pub fn eigen_analysis(sigma: &AlternatingForm, theta: &AlternatingForm, f: &Field) -> Result<EigenDecomposition> {
    check_pair(sigma, theta)?;
    let a = require_nondegenerate(sigma, f)?.mul(theta.gram(), f)?;
    let pairs: Vec<(u8, Subspace)> = f
        .elements()
        .map(|l| (l, kernel(&a.shift_diagonal(l, f), f)))
        .filter(|(_, s)| s.dim() > 0)
        .collect();
    let total: usize = pairs.iter().map(|(_, s)| s.dim()).sum();
    Ok(EigenDecomposition {
        diagonalizable: total == sigma.dim(),
        pairs,
    })
}

/// N1 = #{p : p^⊥σ ⊆ p^⊥θ}, as the number of eigenpoints of M⁻¹S.
pub fn count_n1(sigma: &AlternatingForm, theta: &AlternatingForm, f: &Field) -> Result<u128> {
    Ok(eigen_analysis(sigma, theta, f)?.eigenpoint_count(f.order()))
}

/// Whether p^⊥σ ⊆ p^⊥θ.
pub fn perp_contained(sigma: &AlternatingForm, theta: &AlternatingForm, p: &[u8], f: &Field) -> bool {
    let sp = Subspace::span(&Matrix::from_rows(&[p]).expect("row"), f);
    let perp = sigma.perp(&sp, f);
    let ok = perp.basis().row_iter().all(|x| theta.eval(p, x, f) == 0);
    ok
}

/// N1 by testing the perp inclusion at every projective point.
pub fn count_n1_direct(sigma: &AlternatingForm, theta: &AlternatingForm, f: &Field) -> Result<u128> {
    check_pair(sigma, theta)?;
    require_nondegenerate(sigma, f)?;
    Ok(ProjectivePoints::new(sigma.dim(), f)
        .filter(|p| perp_contained(sigma, theta, p, f))
        .count() as u128)
}

/// η: the number of lines totally isotropic for both σ and θ, by enumerating
/// the σ-isotropic lines.
pub fn count_common_isotropic_lines(sigma: &AlternatingForm, theta: &AlternatingForm, f: &Field) -> Result<u128> {
    check_pair(sigma, theta)?;
    if sigma.n() < 2 {
        return Err(Error::Domain("need n >= 2".into()));
    }
    require_nondegenerate(sigma, f)?;
    let mut eta = 0u128;
    for_each_isotropic(sigma, 2, f, |m| {
        if theta.eval(m.row(0), m.row(1), f) == 0 {
            eta += 1;
        }
    });
    Ok(eta)
}

/// θ with θ(v1, v2) = σ(v1, v2) and radical ℓ^⊥σ, for the non-isotropic line
/// ℓ = ⟨v1, v2⟩ where v1 = e_1 and v2 is the first basis vector with
/// σ(e_1, v2) ≠ 0 (e_{n+1} for the standard form).
///
/// θ(x, y) = (σ(x, v2)σ(v1, y) - σ(v1, x)σ(y, v2)) / σ(v1, v2) is σ evaluated
/// on the projections of x and y onto ℓ along ℓ^⊥σ.
pub fn worst_case_theta(sigma: &AlternatingForm, f: &Field) -> Result<AlternatingForm> {
    if sigma.n() < 2 {
        return Err(Error::Domain("worst_case_theta needs n >= 2".into()));
    }
    require_nondegenerate(sigma, f)?;
    let d = sigma.dim();
    let g = sigma.gram();
    let j = (0..d).find(|&j| g.get(0, j) != 0).expect("nondegenerate");
    let c = g.get(0, j);
    let c_inv = f.inv(c).expect("nonzero");
    // a[x] = σ(x, v2) = G[x][j], b[x] = σ(v1, x) = G[0][x]
    let mut gram = Matrix::zeros(d, d);
    for x in 0..d {
        for y in 0..d {
            let v = f.sub(f.mul(g.get(x, j), g.get(0, y)), f.mul(g.get(0, x), g.get(y, j)));
            gram.set(x, y, f.mul(v, c_inv));
        }
    }
    AlternatingForm::new(gram, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn e(i: usize, d: usize) -> Vec<u8> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    fn span(rows: &[Vec<u8>], f: &Field) -> Subspace {
        Subspace::span(&Matrix::from_rows(rows).unwrap(), f)
    }

    #[test]
    fn standard_form_examples() {
        let f2 = gf(2);
        let s = AlternatingForm::standard(1, &f2);
        assert_eq!(s.gram(), &Matrix::from_rows(&[[0u8, 1], [1, 0]]).unwrap());
        let f3 = gf(3);
        let s = AlternatingForm::standard(2, &f3);
        assert_eq!(s.rank(&f3), 4);
        assert_eq!(s.radical(&f3).dim(), 0);
        let s = AlternatingForm::standard(3, &f2);
        for i in 0..6 {
            for j in 0..6 {
                let v = s.eval(&e(i, 6), &e(j, 6), &f2);
                assert_eq!(v != 0, j == i + 3 || i == j + 3, "{i} {j}");
            }
        }
    }

    #[test]
    fn construction_rejects_bad_gram() {
        let f3 = gf(3);
        let sym = Matrix::from_rows(&[[0u8, 1], [1, 0]]).unwrap();
        assert!(AlternatingForm::new(sym, &f3).is_err());
        let diag = Matrix::from_rows(&[[1u8, 0], [0, 0]]).unwrap();
        assert!(AlternatingForm::new(diag, &f3).is_err());
        assert!(AlternatingForm::new(Matrix::zeros(3, 3), &f3).is_err());
        // char 2: symmetric is skew, but the diagonal must still vanish
        let f2 = gf(2);
        assert!(AlternatingForm::new(Matrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap(), &f2).is_err());
    }

    #[test]
    fn radical_and_perp() {
        let f2 = gf(2);
        let sigma = AlternatingForm::standard(2, &f2);
        assert_eq!(AlternatingForm::zero(2).radical(&f2), Subspace::full(4));
        assert_eq!(sigma.perp(&Subspace::full(4), &f2).dim(), 0);
        assert_eq!(sigma.perp(&Subspace::zero(4), &f2), Subspace::full(4));
        let p = sigma.perp(&span(&[e(0, 4)], &f2), &f2);
        assert_eq!(p, span(&[e(0, 4), e(1, 4), e(3, 4)], &f2));
        // exhaustive over the 16 vectors
        for v in 0..16u8 {
            let x: Vec<u8> = (0..4).map(|b| (v >> b) & 1).collect();
            assert_eq!(p.contains(&x, &f2), sigma.eval(&e(0, 4), &x, &f2) == 0);
        }
    }

    #[test]
    fn isotropy() {
        let f = gf(5);
        let sigma = AlternatingForm::standard(3, &f);
        let theta = random_alternating(3, &f, &mut ChaCha8Rng::seed_from_u64(3));
        for p in ProjectivePoints::new(6, &f).take(50) {
            let s = span(&[p], &f);
            assert!(sigma.is_totally_isotropic(&s, &f));
            assert!(theta.is_totally_isotropic(&s, &f));
        }
        assert!(!sigma.is_totally_isotropic(&span(&[e(0, 6), e(3, 6)], &f), &f));
        assert!(sigma.is_totally_isotropic(&span(&[e(0, 6), e(1, 6)], &f), &f));
    }

    #[test]
    fn eigen_examples() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 5)] {
            let f = gf(q);
            let sigma = AlternatingForm::standard(n, &f);
            let e1 = eigen_analysis(&sigma, &sigma, &f).unwrap();
            assert_eq!(e1.pairs.len(), 1);
            assert_eq!((e1.pairs[0].0, e1.pairs[0].1.dim()), (1, 2 * n));
            let e0 = eigen_analysis(&sigma, &AlternatingForm::zero(n), &f).unwrap();
            assert_eq!((e0.pairs[0].0, e0.pairs[0].1.dim()), (0, 2 * n));
            let w = worst_case_theta(&sigma, &f).unwrap();
            let ew = eigen_analysis(&sigma, &w, &f).unwrap();
            assert_eq!(ew.dimensions(), vec![2, 2 * n - 2]);
            assert!(ew.diagonalizable);
            assert_eq!(w.rank(&f), 2);
            assert!(w.scalar_multiple_of(&sigma, &f).is_none());
            // the radical is ℓ^⊥σ for ℓ = <e_1, e_{n+1}>
            let ell = span(&[e(0, 2 * n), e(n, 2 * n)], &f);
            assert_eq!(w.radical(&f), sigma.perp(&ell, &f));
            assert_eq!(w.radical(&f).dim(), 2 * n - 2);
            assert_eq!(
                w.eval(&e(0, 2 * n), &e(n, 2 * n), &f),
                sigma.eval(&e(0, 2 * n), &e(n, 2 * n), &f)
            );
        }
        assert!(eigen_analysis(&AlternatingForm::zero(2), &AlternatingForm::zero(2), &gf(2)).is_err());
        assert!(worst_case_theta(&AlternatingForm::standard(1, &gf(3)), &gf(3)).is_err());
    }

    #[test]
    fn n1_examples() {
        for (n, q) in [(2, 2), (2, 3), (3, 2)] {
            let f = gf(q);
            let sigma = AlternatingForm::standard(n, &f);
            let all = ((q as u128).pow(2 * n as u32) - 1) / (q as u128 - 1);
            assert_eq!(count_n1(&sigma, &sigma, &f).unwrap(), all);
            assert_eq!(count_n1_direct(&sigma, &sigma, &f).unwrap(), all);
            let w = worst_case_theta(&sigma, &f).unwrap();
            let expected = formulas::n1_max(n, q as u64).unwrap();
            assert_eq!(count_n1(&sigma, &w, &f).unwrap(), expected);
            assert_eq!(count_n1_direct(&sigma, &w, &f).unwrap(), expected);
        }
        let f2 = gf(2);
        let w = worst_case_theta(&AlternatingForm::standard(2, &f2), &f2).unwrap();
        assert_eq!(count_n1(&AlternatingForm::standard(2, &f2), &w, &f2).unwrap(), 6);
    }

    #[test]
    fn eta_examples() {
        let f2 = gf(2);
        let sigma = AlternatingForm::standard(2, &f2);
        assert_eq!(count_common_isotropic_lines(&sigma, &sigma, &f2).unwrap(), 15);
        let w = worst_case_theta(&sigma, &f2).unwrap();
        assert_eq!(count_common_isotropic_lines(&sigma, &w, &f2).unwrap(), 9);
        let f = gf(3);
        let sigma = AlternatingForm::standard(3, &f);
        assert_eq!(
            count_common_isotropic_lines(&sigma, &sigma, &f).unwrap(),
            formulas::length(3, 2, 3).unwrap()
        );
    }

    #[test]
    fn eigenvector_criterion_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, q, trials) in [(2, 2, 40), (2, 3, 25), (3, 2, 10)] {
            let f = gf(q);
            let sigma = AlternatingForm::standard(n, &f);
            for t in 0..trials {
                let theta = match t {
                    0 => worst_case_theta(&sigma, &f).unwrap(),
                    1 => AlternatingForm::zero(n),
                    _ => random_alternating(n, &f, &mut rng),
                };
                let eig = eigen_analysis(&sigma, &theta, &f).unwrap();
                for p in ProjectivePoints::new(2 * n, &f) {
                    assert_eq!(perp_contained(&sigma, &theta, &p, &f), eig.contains_eigenvector(&p, &f));
                }
            }
        }
    }

    #[test]
    fn line_count_identity_and_scalar_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = gf(q);
            let sigma = AlternatingForm::standard(n, &f);
            for _ in 0..20 {
                let theta = random_alternating(n, &f, &mut rng);
                let eta = count_common_isotropic_lines(&sigma, &theta, &f).unwrap();
                let n1 = count_n1(&sigma, &theta, &f).unwrap();
                let rhs = formulas::line_count_rhs(n, q as u64, n1).unwrap();
                assert_eq!((q as u128 + 1) * eta, rhs);
                for l in f.elements() {
                    let shifted = theta.minus_scaled(&sigma, l, &f);
                    assert_eq!(count_common_isotropic_lines(&sigma, &shifted, &f).unwrap(), eta);
                }
            }
        }
    }

    #[test]
    fn worst_case_maximizes_n1_over_all_forms_n2() {
        // every alternating form on V(4, q): q^6 of them
        for q in [2u32, 3] {
            let f = gf(q);
            let sigma = AlternatingForm::standard(2, &f);
            let mut best = 0;
            for code in 0..q.pow(6) {
                let mut gram = Matrix::zeros(4, 4);
                let mut c = code;
                for i in 0..4 {
                    for j in i + 1..4 {
                        let v = (c % q) as u8;
                        c /= q;
                        gram.set(i, j, v);
                        gram.set(j, i, f.neg(v));
                    }
                }
                let theta = AlternatingForm::new(gram, &f).unwrap();
                if theta.scalar_multiple_of(&sigma, &f).is_some() {
                    continue;
                }
                best = best.max(count_n1(&sigma, &theta, &f).unwrap());
            }
            let worst = worst_case_theta(&sigma, &f).unwrap();
            assert_eq!(best, formulas::n1_max(2, q as u64).unwrap());
            assert_eq!(count_n1(&sigma, &worst, &f).unwrap(), best);
        }
    }

    #[test]
    fn random_forms_are_alternating_with_even_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [2u32, 3, 4, 9, 16] {
            let f = gf(q);
            for _ in 0..20 {
                let t = random_alternating(3, &f, &mut rng);
                let again = AlternatingForm::new(t.gram().clone(), &f).unwrap();
                assert_eq!(again.rank(&f) % 2, 0);
                let sigma = AlternatingForm::standard(3, &f);
                assert!(random_theta_distinct(&sigma, &f, &mut rng)
                    .scalar_multiple_of(&sigma, &f)
                    .is_none());
            }
        }
    }
}
