//! Bit-packed matrices over GF(2): 64 entries per word, elimination by XOR.

use crate::linalg::Matrix;

/// Packs a 0/1 vector into little-endian 64-bit words.
pub fn pack_bits(v: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; v.len().div_ceil(64)];
    for (j, &x) in v.iter().enumerate() {
        if x & 1 == 1 {
            out[j / 64] |= 1 << (j % 64);
        }
    }
    out
}

pub fn unpack_bits(words: &[u64], len: usize) -> Vec<u8> {
    (0..len).map(|j| ((words[j / 64] >> (j % 64)) & 1) as u8).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    /// Packs a matrix whose entries are GF(2) encodings.
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut b = BitMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            let packed = pack_bits(m.row(i));
            b.row_mut(i).copy_from_slice(&packed);
        }
        b
    }

    pub fn to_matrix(&self) -> Matrix {
        let data = (0..self.rows)
            .flat_map(|i| unpack_bits(self.row(i), self.cols))
            .collect();
        Matrix::from_vec(self.rows, self.cols, data).expect("shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            if p != r {
                for t in 0..w {
                    self.data.swap(p * w + t, r * w + t);
                }
            }
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let (head, tail) = self.data.split_at_mut(r * w);
            let (prow, rest) = tail.split_at_mut(w);
            for other in head.chunks_exact_mut(w).chain(rest.chunks_exact_mut(w)) {
                if other[word] & bit != 0 {
                    for (o, &s) in other[word..].iter_mut().zip(&prow[word..]) {
                        *o ^= s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.words == 0 {
            return 0;
        }
        self.clone().rref_in_place().len()
    }
}
