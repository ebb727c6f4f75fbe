//! Table-driven arithmetic in GF(q) for prime powers q <= 16.
//!
//! An element of GF(p^e) is encoded as the integer `sum c_i p^i` where
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is its polynomial representative
//! modulo a fixed irreducible polynomial. The moduli are fixed so that
//! encodings written to disk are reproducible:
//!
//! | q  | modulus        |
//! |----|----------------|
//! | 4  | x^2 + x + 1    |
//! | 8  | x^3 + x + 1    |
//! | 9  | x^2 + x + 2    |
//! | 16 | x^4 + x + 1    |
//!
//! Hot loops work on raw `u8` encodings through [`Field::add`] and
//! [`Field::mul`]; [`FieldElement`] is the checked, field-tagged wrapper.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: usize = 16;

/// Finite field GF(q) with full addition and multiplication tables.
#[derive(Clone)]
pub struct Field {
    q: u8,
    p: u8,
    e: u8,
    modulus: Vec<u8>,
    add: [[u8; MAX_ORDER]; MAX_ORDER],
    mul: [[u8; MAX_ORDER]; MAX_ORDER],
    neg: [u8; MAX_ORDER],
    inv: [u8; MAX_ORDER],
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // one fixed modulus per order
        self.q == other.q
    }
}

impl Eq for Field {}

/// Coefficients (constant term first) of the monic modulus used for GF(p^e).
fn modulus_for(q: u32) -> Option<(u8, u8, Vec<u8>)> {
    Some(match q {
        2 | 3 | 5 | 7 | 11 | 13 => (q as u8, 1, vec![0, 1]),
        4 => (2, 2, vec![1, 1, 1]),
        8 => (2, 3, vec![1, 1, 0, 1]),
        9 => (3, 2, vec![2, 1, 1]),
        16 => (2, 4, vec![1, 1, 0, 0, 1]),
        _ => return None,
    })
}

fn digits(mut v: u8, p: u8, e: u8) -> Vec<u8> {
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u8], p: u8) -> u8 {
    ds.iter().rev().fold(0u8, |acc, &d| acc * p + d)
}

fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u8) -> Vec<u8> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u16; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p as u16;
        }
    }
    // modulus is monic: x^e = -(m_0 + ... + m_{e-1} x^{e-1})
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (t, &m) in modulus[..e].iter().enumerate() {
            let sub = (c * m as u16) % p as u16;
            let idx = deg - e + t;
            prod[idx] = (prod[idx] + p as u16 - sub) % p as u16;
        }
    }
    prod[..e].iter().map(|&c| c as u8).collect()
}

impl Field {
    /// Builds GF(q). Fails unless q is a prime power no larger than 16.
    pub fn new(q: u32) -> Result<Self> {
        let (p, e, modulus) = modulus_for(q).ok_or(Error::UnsupportedField(q))?;
        let q8 = q as u8;
        let mut add = [[0u8; MAX_ORDER]; MAX_ORDER];
        let mut mul = [[0u8; MAX_ORDER]; MAX_ORDER];
        let mut neg = [0u8; MAX_ORDER];
        let mut inv = [0u8; MAX_ORDER];
        for a in 0..q8 {
            let da = digits(a, p, e);
            for b in 0..q8 {
                let db = digits(b, p, e);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a as usize][b as usize] = undigits(&sum, p);
                let prod = if e == 1 {
                    ((a as u16 * b as u16) % p as u16) as u8
                } else {
                    undigits(&poly_mul_mod(&da, &db, &modulus, p), p)
                };
                mul[a as usize][b as usize] = prod;
            }
        }
        for a in 0..q8 as usize {
            neg[a] = (0..q8).find(|&b| add[a][b as usize] == 0).expect("additive inverse");
            if a != 0 {
                inv[a] = (1..q8)
                    .find(|&b| mul[a][b as usize] == 1)
                    .ok_or(Error::UnsupportedField(q))?;
            }
        }
        Ok(Field {
            q: q8,
            p,
            e,
            modulus: if e > 1 { modulus } else { Vec::new() },
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.e as u32
    }

    /// Modulus coefficients, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// All encodings `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    /// Nonzero encodings `1..q`.
    pub fn units(&self) -> impl Iterator<Item = u8> {
        1..self.q
    }

    #[inline(always)]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][self.neg[b as usize] as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut exp: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Row `a` of the addition table, indexed by the second operand.
    #[inline(always)]
    pub fn add_row(&self, a: u8) -> &[u8; MAX_ORDER] {
        &self.add[a as usize]
    }

    /// Row `a` of the multiplication table, indexed by the second operand.
    #[inline(always)]
    pub fn mul_row(&self, a: u8) -> &[u8; MAX_ORDER] {
        &self.mul[a as usize]
    }

    /// Wraps a raw encoding, checking its range.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.q as u32 {
            return Err(Error::Domain(format!("{value} is not an element of GF({})", self.q)));
        }
        Ok(FieldElement {
            value: value as u8,
            order: self.q,
        })
    }

    fn check(&self, a: FieldElement) -> Result<u8> {
        if a.order != self.q {
            return Err(Error::Usage(format!(
                "element of GF({}) used with GF({})",
                a.order, self.q
            )));
        }
        Ok(a.value)
    }

    fn wrap(&self, value: u8) -> FieldElement {
        FieldElement { value, order: self.q }
    }

    pub fn fe_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add(self.check(a)?, self.check(b)?)))
    }

    pub fn fe_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul(self.check(a)?, self.check(b)?)))
    }

    pub fn fe_inv(&self, a: FieldElement) -> Result<FieldElement> {
        let v = self.check(a)?;
        self.inv(v)
            .map(|i| self.wrap(i))
            .ok_or_else(|| Error::Domain("zero has no multiplicative inverse".into()))
    }
}

/// An element of a specific GF(q), tagged with the field order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u8,
    order: u8,
}

impl FieldElement {
    pub fn value(self) -> u8 {
        self.value
    }

    pub fn order(self) -> u32 {
        self.order as u32
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The supported field orders.
pub const ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(f: &Field, v: u32) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn small_examples() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.fe_add(fe(&f3, 2), fe(&f3, 2)).unwrap().value(), 1);
        assert_eq!(f3.fe_mul(fe(&f3, 2), fe(&f3, 2)).unwrap().value(), 1);
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.fe_add(fe(&f2, 1), fe(&f2, 1)).unwrap().value(), 0);
        // GF(4): x = 2, x + 1 = 3
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.add(2, 3), 1);
        assert_eq!(f4.mul(2, 2), 3);
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            assert_eq!(f.fe_inv(fe(&f, 1)).unwrap().value(), 1);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(Field::new(6), Err(Error::UnsupportedField(6))));
        assert!(Field::new(32).is_err());
        assert!(Field::new(1).is_err());
        let f5 = Field::new(5).unwrap();
        assert!(matches!(f5.fe_inv(fe(&f5, 0)), Err(Error::Domain(_))));
        assert!(f5.element(5).is_err());
        let f7 = Field::new(7).unwrap();
        assert!(matches!(f5.fe_add(fe(&f5, 1), fe(&f7, 1)), Err(Error::Usage(_))));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            let els: Vec<u8> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "GF({q}) inverse of {a}");
                }
                // Frobenius
                assert_eq!(f.pow(a, q as u64), a);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn extension_fields_use_fixed_moduli() {
        assert_eq!(Field::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[2, 1, 1]);
        assert_eq!(Field::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert!(Field::new(13).unwrap().modulus().is_empty());
        let f9 = Field::new(9).unwrap();
        assert_eq!((f9.characteristic(), f9.degree()), (3, 2));
        // x^2 = -x - 2 = 2x + 1 in GF(9): x = 3, 2x + 1 = 7
        assert_eq!(f9.mul(3, 3), 7);
    }
}
