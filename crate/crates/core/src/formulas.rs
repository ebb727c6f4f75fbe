//! Closed-form parameters of W(n, k) and the reference tables the
//! enumeration results are checked against.
//!
//! Everything is exact `u128`/`i128` arithmetic. Overflow is reported as
//! [`Error::Overflow`] and every division is checked for a zero remainder.

use crate::codes::WeightEnumerator;
use crate::error::{Error, Result};

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a divisor");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

fn check_q(q: u64) -> Result<u128> {
    if !is_prime_power(q) {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    Ok(q as u128)
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    Ok(())
}

fn pow(q: u128, e: usize, what: &'static str) -> Result<u128> {
    q.checked_pow(e as u32).ok_or(Error::Overflow(what))
}

fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn exact_div(a: u128, b: u128, what: &'static str) -> Result<u128> {
    assert!(b != 0 && a.is_multiple_of(b), "{what}: {a} is not divisible by {b}");
    Ok(a / b)
}

/// Ordinary binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of k-dimensional subspaces of an m-dimensional space over GF(q).
pub fn gaussian_binomial(m: usize, k: usize, q: u64) -> Result<u128> {
    let q = check_q(q)?;
    if k > m {
        return Ok(0);
    }
    let mut acc = 1u128;
    for i in 0..k {
        let num = pow(q, m - i, "gaussian binomial")? - 1;
        let den = pow(q, i + 1, "gaussian binomial")? - 1;
        acc = exact_div(mul(acc, num, "gaussian binomial")?, den, "gaussian binomial")?;
    }
    Ok(acc)
}

/// Length N = #Λ(n, k), the number of totally isotropic k-subspaces.
pub fn length(n: usize, k: usize, q: u64) -> Result<u128> {
    check_nk(n, k)?;
    let q = check_q(q)?;
    let mut acc = 1u128;
    for i in 0..k {
        let num = pow(q, 2 * n - 2 * i, "length")? - 1;
        let den = pow(q, i + 1, "length")? - 1;
        // each partial product counts isotropic (i+1)-spaces, hence integral
        acc = exact_div(mul(acc, num, "length")?, den, "length")?;
    }
    Ok(acc)
}

/// Dimension K = C(2n, k) - C(2n, k-2).
pub fn dimension(n: usize, k: usize) -> Result<u128> {
    check_nk(n, k)?;
    let low = k.checked_sub(2).map_or(0, |j| binomial(2 * n, j));
    Ok(binomial(2 * n, k) - low)
}

/// Minimum distance of the line code W(n, 2): q^(4n-5) - q^(2n-3).
pub fn dmin_line(n: usize, q: u64) -> Result<u128> {
    if n < 2 {
        return Err(Error::Domain("the line code needs n >= 2".into()));
    }
    let q = check_q(q)?;
    Ok(pow(q, 4 * n - 5, "dmin_line")? - pow(q, 2 * n - 3, "dmin_line")?)
}

/// Minimum distance of W(3, 3): q^6 - q^4.
pub fn dmin_dps3(q: u64) -> Result<u128> {
    let q = check_q(q)?;
    Ok(pow(q, 6, "dmin_dps3")? - pow(q, 4, "dmin_dps3")?)
}

/// Minimum distance where it is known in closed form (k = 2, or n = k = 3).
pub fn known_dmin(n: usize, k: usize, q: u64) -> Result<Option<u128>> {
    check_nk(n, k)?;
    match (n, k) {
        (_, 2) => dmin_line(n, q).map(Some),
        (3, 3) => dmin_dps3(q).map(Some),
        _ => Ok(None),
    }
}

/// Largest number of points p with p^⊥σ ⊆ p^⊥θ over alternating θ ≠ λσ:
/// (q^(2n-2) - 1)/(q - 1) + (q^2 - 1)/(q - 1).
pub fn n1_max(n: usize, q: u64) -> Result<u128> {
    if n < 2 {
        return Err(Error::Domain("n1_max needs n >= 2".into()));
    }
    let q = check_q(q)?;
    Ok(exact_div(pow(q, 2 * n - 2, "n1_max")? - 1, q - 1, "n1_max")? + (q + 1))
}

/// Right-hand side of the line-counting identity
/// (q+1)·η = q^(2n-3)·N1 + (q^(2n)-1)(q^(2n-3)-1)/(q-1)^2.
pub fn line_count_rhs(n: usize, q: u64, n1: u128) -> Result<u128> {
    if n < 2 {
        return Err(Error::Domain("the line count needs n >= 2".into()));
    }
    let q = check_q(q)?;
    let a = mul(pow(q, 2 * n - 3, "line_count_rhs")?, n1, "line_count_rhs")?;
    let b = mul(
        pow(q, 2 * n, "line_count_rhs")? - 1,
        pow(q, 2 * n - 3, "line_count_rhs")? - 1,
        "line_count_rhs",
    )?;
    let b = exact_div(b, (q - 1) * (q - 1), "line_count_rhs")?;
    a.checked_add(b).ok_or(Error::Overflow("line_count_rhs"))
}

/// Maximum number η of lines isotropic for both σ and some θ ≠ λσ, from the
/// closed display
/// (q^(4n-3) + q^(4n-4) - q^(4n-5) - q^(2n-1) - 2q^(2n-2) + q^(2n-3) + 1) / ((q-1)(q^2-1)).
pub fn eta_max(n: usize, q: u64) -> Result<u128> {
    if n < 2 {
        return Err(Error::Domain("eta_max needs n >= 2".into()));
    }
    let qq = check_q(q)?;
    let p = |e: usize| pow(qq, e, "eta_max");
    let plus = p(4 * n - 3)? + p(4 * n - 4)? + p(2 * n - 3)? + 1;
    let minus = p(4 * n - 5)? + p(2 * n - 1)? + 2 * p(2 * n - 2)?;
    exact_div(plus - minus, (qq - 1) * (qq * qq - 1), "eta_max")
}

/// Weight table of W(2, 2), zero word included.
pub fn w22_table(q: u64) -> Result<WeightEnumerator> {
    let q = check_q(q)?;
    let q2 = q * q;
    let q3 = q2 * q;
    let rows = [
        (q3 - q, exact_div(q2 * (q2 + 1) * (q - 1), 2, "w22")?),
        (q3, q2 * q2 - 1),
        (q3 + q, exact_div(q2 * (q2 - 1) * (q - 1), 2, "w22")?),
    ];
    Ok(table(&rows))
}

/// Weight table of W(3, 3), zero word included.
pub fn w33_table(q: u64) -> Result<WeightEnumerator> {
    let q = check_q(q)?;
    let p = |e: usize| pow(q, e, "w33");
    let (q2, q3, q4, q6) = (p(2)?, p(3)?, p(4)?, p(6)?);
    let rows = [
        (
            q6 - q4,
            exact_div(q2 * (q2 + 1) * (q2 + q + 1) * (q3 + 1) * (q - 1), 2, "w33")?,
        ),
        (
            q6,
            (q + 1) * (q + 1) * (q2 - q + 1) * (q2 + 1) * (q6 - q3 + 1) * (q - 1),
        ),
        (q6 + q3, mul(p(9)?, (q4 - 1) * (q - 1), "w33")?),
        (q6 + q4, exact_div(q2 * (q + 1) * (q6 - 1) * (q - 1), 2, "w33")?),
    ];
    Ok(table(&rows))
}

fn table(rows: &[(u128, u128)]) -> WeightEnumerator {
    let mut e = WeightEnumerator::default();
    e.add(0, 1);
    for &(w, c) in rows {
        e.add(w as u64, c);
    }
    e
}

/// Lower bound on d_min(W(n, 2)) obtained from the second higher weight of
/// the ordinary Grassmann code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannBound {
    /// Bound rounded toward zero.
    pub value: i128,
    pub numerator: i128,
    pub denominator: i128,
}

impl GrassmannBound {
    pub fn is_integral(&self) -> bool {
        self.numerator % self.denominator == 0
    }
}

/// (q^(4n-2) - 2q^(4n-3) + q^(4n-5) + q^(2n-1) - q^(2n-2)) / ((q-1)(q^2-1)).
pub fn grassmann_bound_line(n: usize, q: u64) -> Result<GrassmannBound> {
    if n < 2 {
        return Err(Error::Domain("the line bound needs n >= 2".into()));
    }
    let qq = check_q(q)?;
    let p = |e: usize| -> Result<i128> {
        let v = pow(qq, e, "grassmann_bound_line")?;
        i128::try_from(v).map_err(|_| Error::Overflow("grassmann_bound_line"))
    };
    let numerator = p(4 * n - 2)? - 2 * p(4 * n - 3)? + p(4 * n - 5)? + p(2 * n - 1)? - p(2 * n - 2)?;
    let qi = qq as i128;
    let denominator = (qi - 1) * (qi * qi - 1);
    Ok(GrassmannBound {
        value: numerator / denominator,
        numerator,
        denominator,
    })
}

/// The same bound through its unsimplified form N - [2n, 2]_q + q^(4n-5)(q+1).
pub fn grassmann_bound_line_unsimplified(n: usize, q: u64) -> Result<i128> {
    let big = |v: u128| i128::try_from(v).map_err(|_| Error::Overflow("grassmann bound"));
    let len = big(length(n, 2, q)?)?;
    let gb = big(gaussian_binomial(2 * n, 2, q)?)?;
    let tail = big(mul(
        pow(q as u128, 4 * n - 5, "grassmann bound")?,
        q as u128 + 1,
        "grassmann bound",
    )?)?;
    Ok(len - gb + tail)
}

/// Upper bound q^(n(n+1)/2) on d_min(W(n, n)).
pub fn pz_upper(n: usize, q: u64) -> Result<u128> {
    if n < 1 {
        return Err(Error::Domain("pz_upper needs n >= 1".into()));
    }
    pow(check_q(q)?, n * (n + 1) / 2, "pz_upper")
}

/// N, K and (where known) d_min of W(n, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub length: u128,
    pub dimension: u128,
    pub d_min: Option<u128>,
}

pub fn params(n: usize, k: usize, q: u64) -> Result<CodeParams> {
    Ok(CodeParams {
        n,
        k,
        q,
        length: length(n, k, q)?,
        dimension: dimension(n, k)?,
        d_min: known_dmin(n, k, q)?,
    })
}
