//! The projective code W(n, k) and exact weight enumeration.

mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forms::AlternatingForm;
use crate::gf::Field;
use crate::grassmann::{for_each_isotropic, PluckerMap};
use crate::linalg::{rref_in_place, Matrix, Subspace};

pub use sweep::{cost_estimate, SweepConfig, DEFAULT_BUDGET, SLOW_THRESHOLD};

/// Exact map weight -> number of codewords, zero word included.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightEnumerator {
    distribution: BTreeMap<u64, u128>,
}

impl WeightEnumerator {
    pub fn add(&mut self, weight: u64, count: u128) {
        if count > 0 {
            *self.distribution.entry(weight).or_insert(0) += count;
        }
    }

    pub fn from_histogram(hist: &[u128]) -> Self {
        let mut e = WeightEnumerator::default();
        for (w, &c) in hist.iter().enumerate() {
            e.add(w as u64, c);
        }
        e
    }

    pub fn get(&self, weight: u64) -> u128 {
        self.distribution.get(&weight).copied().unwrap_or(0)
    }

    /// (weight, count) pairs in increasing weight order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.distribution.iter().map(|(&w, &c)| (w, c))
    }

    pub fn distribution(&self) -> &BTreeMap<u64, u128> {
        &self.distribution
    }

    pub fn total(&self) -> u128 {
        self.distribution.values().sum()
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.distribution.keys().copied().filter(|&w| w > 0)
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.nonzero_weights().next()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.distribution.keys().next_back().copied()
    }
}

/// Where a code came from, when it was built from Λ(n, k).
#[derive(Clone, Debug)]
pub struct Origin {
    pub n: usize,
    pub k: usize,
    /// The points of Λ(n, k), one per coordinate of the code.
    pub points: Vec<Subspace>,
}

/// Linear code given by a full-rank K x N generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    generator: Matrix,
    origin: Option<Origin>,
}

impl LinearCode {
    /// Wraps a generator matrix, which must have full row rank.
    pub fn from_generator(field: Field, generator: Matrix) -> Result<Self> {
        generator.check_entries(&field)?;
        let r = crate::linalg::rank(&generator, &field);
        if r != generator.rows() {
            return Err(Error::Domain(format!(
                "generator has rank {r} but {} rows",
                generator.rows()
            )));
        }
        Ok(LinearCode {
            field,
            generator,
            origin: None,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn origin(&self) -> Option<&Origin> {
        self.origin.as_ref()
    }

    /// `message * G`.
    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.dimension() {
            return Err(Error::Dimension(format!(
                "message of length {} for a code of dimension {}",
                message.len(),
                self.dimension()
            )));
        }
        let m = Matrix::from_rows(&[message])?;
        Ok(m.mul(&self.generator, &self.field)?.row(0).to_vec())
    }

    /// Whether `word` lies in the row space of the generator.
    pub fn contains(&self, word: &[u8]) -> bool {
        word.len() == self.length() && Subspace::span(&self.generator, &self.field).contains(word, &self.field)
    }
}

/// N x C(2n, k) matrix of normalized Plücker coordinates of `points`.
pub fn plucker_matrix(points: &[Subspace], ambient: usize, k: usize, f: &Field) -> Matrix {
    let map = PluckerMap::new(ambient, k);
    let mut data = vec![0u8; points.len() * map.len()];
    for (s, out) in points.iter().zip(data.chunks_exact_mut(map.len().max(1))) {
        map.minors_into(s.basis(), f, out);
        crate::linalg::normalize(out, f);
    }
    Matrix::from_vec(points.len(), map.len(), data).expect("shape")
}

/// Rank of the Plücker coordinates of Λ(n, k), streamed through an
/// incrementally reduced basis without materializing the point set.
pub fn plucker_rank(n: usize, k: usize, f: &Field) -> Result<usize> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let sigma = AlternatingForm::standard(n, f);
    let map = PluckerMap::new(2 * n, k);
    let mut basis = crate::linalg::EchelonBasis::new(map.len());
    let mut coords = vec![0u8; map.len()];
    for_each_isotropic(&sigma, k, f, |m| {
        map.minors_into(m, f, &mut coords);
        basis.insert(&coords, f);
    });
    Ok(basis.rank())
}

/// Builds W(n, k): the generator is the nonzero part of the RREF of the
/// transposed Plücker matrix, i.e. a basis of the coordinate functionals
/// evaluated at the points.
pub fn build_code(n: usize, k: usize, f: &Field) -> Result<LinearCode> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let points = crate::grassmann::enumerate_isotropic(n, k, f)?;
    let pm = plucker_matrix(&points, 2 * n, k, f);
    let mut g = pm.transpose();
    let r = if f.order() == 2 {
        let mut bits = crate::bitmat::BitMatrix::from_matrix(&g);
        let r = bits.rref_in_place().len();
        g = bits.to_matrix();
        r
    } else {
        rref_in_place(&mut g, f).len()
    };
    let generator = Matrix::from_vec(r, g.cols(), g.data()[..r * g.cols()].to_vec())?;
    Ok(LinearCode {
        field: f.clone(),
        generator,
        origin: Some(Origin { n, k, points }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Every codeword, visited in reflected q-ary Gray order.
    CodewordSweep,
    /// Every hyperplane of PG(K-1, q), counting points off it.
    HyperplaneSweep,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::CodewordSweep => "codeword_sweep",
            Method::HyperplaneSweep => "hyperplane_sweep",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "codeword_sweep" | "codeword" => Ok(Method::CodewordSweep),
            "hyperplane_sweep" | "hyperplane" => Ok(Method::HyperplaneSweep),
            _ => Err(Error::Usage(format!("unknown method {s:?}"))),
        }
    }
}

/// Exact weight enumerator of `code`.
pub fn weight_enumerator(code: &LinearCode, method: Method, config: &SweepConfig) -> Result<WeightEnumerator> {
    config.check_budget(code, method)?;
    let hist = match method {
        Method::CodewordSweep => config.run(|| sweep::codeword_histogram(code, None)).0,
        Method::HyperplaneSweep => config.run(|| sweep::hyperplane_histogram(code)),
    };
    Ok(WeightEnumerator::from_histogram(&hist))
}

/// Smallest nonzero weight. With `early_exit_bound = Some(b)`, `b` is taken
/// as a known lower bound and the sweep stops at the first word of weight
/// `b`; a lighter word disproves the bound and the sweep runs to the end.
pub fn min_distance(code: &LinearCode, early_exit_bound: Option<u64>, config: &SweepConfig) -> Result<u64> {
    config.check_budget(code, Method::CodewordSweep)?;
    if code.dimension() == 0 {
        return Err(Error::Domain("the zero code has no minimum distance".into()));
    }
    let (hist, hit) = config.run(|| sweep::codeword_histogram(code, early_exit_bound));
    if hit {
        return Ok(early_exit_bound.expect("early exit implies a bound"));
    }
    Ok(WeightEnumerator::from_histogram(&hist)
        .min_nonzero()
        .expect("a nonzero code has a nonzero word"))
}

/// The codeword of W(n, 2) cut out by θ: its entry at the point ⟨v1, v2⟩ is
/// θ(v1, v2), evaluated on the point's RREF basis (the normalized Plücker
/// representative). Returns the word and its weight.
pub fn codeword_from_form(code: &LinearCode, theta: &AlternatingForm) -> Result<(Vec<u8>, usize)> {
    let origin = code
        .origin()
        .filter(|o| o.k == 2)
        .ok_or_else(|| Error::Usage("codeword_from_form needs a code built as W(n, 2)".into()))?;
    if theta.n() != origin.n {
        return Err(Error::Dimension(format!(
            "form on V({}) for W({}, 2)",
            theta.dim(),
            origin.n
        )));
    }
    let f = code.field();
    let word: Vec<u8> = origin
        .points
        .iter()
        .map(|p| theta.eval(p.basis().row(0), p.basis().row(1), f))
        .collect();
    let weight = word.iter().filter(|&&x| x != 0).count();
    Ok((word, weight))
}
