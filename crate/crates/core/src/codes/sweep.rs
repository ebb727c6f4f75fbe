//! Exhaustive sweeps over codewords and hyperplanes.
//!
//! The codeword sweep walks the message space in reflected base-q Gray
//! order, so consecutive messages differ in one digit and the running
//! codeword changes by one scalar multiple of one generator row. The message
//! space is cut into q^t chunks by fixing the top t digits; chunk histograms
//! are summed, so the result does not depend on how chunks land on threads.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use super::{LinearCode, Method};
use crate::bitmat::pack_bits;
use crate::error::{Error, Result};
use crate::gf::{Field, MAX_ORDER};
use crate::linalg::{dot, ProjectivePoints};

/// Default refusal threshold, in elementary row-update operations.
pub const DEFAULT_BUDGET: u128 = 100_000_000_000;

/// Sweeps estimated above this many operations are considered slow.
pub const SLOW_THRESHOLD: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Refuse sweeps whose [`cost_estimate`] exceeds this.
    pub budget: u128,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

impl SweepConfig {
    pub(crate) fn check_budget(&self, code: &LinearCode, method: Method) -> Result<()> {
        let estimate = cost_estimate(code, method);
        if estimate > self.budget {
            return Err(Error::BudgetExceeded {
                estimate,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub(crate) fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        match self.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool")
                .install(job),
            None => job(),
        }
    }
}

fn packed_lanes(q: u32, n: usize) -> u128 {
    match q {
        2 | 3 => n.div_ceil(64) as u128,
        _ => n as u128,
    }
}

/// Estimated operation count: q^K row updates of the packed row width for
/// the codeword sweep, (q^K - 1)/(q - 1) * N * K for the hyperplane sweep.
pub fn cost_estimate(code: &LinearCode, method: Method) -> u128 {
    let q = code.field().order();
    let k = code.dimension() as u32;
    let n = code.length() as u128;
    let words = (q as u128).checked_pow(k).unwrap_or(u128::MAX);
    match method {
        Method::CodewordSweep => words.saturating_mul(packed_lanes(q, code.length()).max(1)),
        Method::HyperplaneSweep => ((words - 1) / (q as u128 - 1))
            .saturating_mul(n)
            .saturating_mul(k as u128),
    }
}

/// Running-codeword representation for one field.
trait Kernel: Sync {
    type State: Send;
    /// Codeword of the given message.
    fn encode(&self, message: &[u8]) -> Self::State;
    fn weight(&self, s: &Self::State) -> usize;
    /// Adds `delta * row` to the state and returns the new weight.
    fn step(&self, s: &mut Self::State, row: usize, delta: u8) -> usize;
}

/// GF(2): one bit per coordinate, XOR and popcount.
struct Gf2Kernel {
    rows: Vec<Vec<u64>>,
}

impl Kernel for Gf2Kernel {
    type State = Vec<u64>;

    fn encode(&self, message: &[u8]) -> Vec<u64> {
        let mut s = vec![0u64; self.rows.first().map_or(0, Vec::len)];
        for (r, &m) in self.rows.iter().zip(message) {
            if m != 0 {
                s.iter_mut().zip(r).for_each(|(a, b)| *a ^= b);
            }
        }
        s
    }

    fn weight(&self, s: &Vec<u64>) -> usize {
        s.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn step(&self, s: &mut Vec<u64>, row: usize, _delta: u8) -> usize {
        let mut w = 0u32;
        for (a, b) in s.iter_mut().zip(&self.rows[row]) {
            *a ^= b;
            w += a.count_ones();
        }
        w as usize
    }
}

/// GF(3) bit-sliced: plane `one` marks entries equal to 1, plane `two`
/// entries equal to 2. Multiplying by 2 = -1 swaps the planes.
struct Gf3Kernel {
    one: Vec<Vec<u64>>,
    two: Vec<Vec<u64>>,
}

/// Entrywise GF(3) sum of bit-sliced words.
#[inline(always)]
fn gf3_add(x1: u64, x2: u64, y1: u64, y2: u64) -> (u64, u64) {
    let t = (x1 | y2) ^ (x2 | y1);
    ((x2 | y2) ^ t, (x1 | y1) ^ t)
}

impl Kernel for Gf3Kernel {
    type State = (Vec<u64>, Vec<u64>);

    fn encode(&self, message: &[u8]) -> Self::State {
        let words = self.one.first().map_or(0, Vec::len);
        let mut s = (vec![0u64; words], vec![0u64; words]);
        for (row, &m) in message.iter().enumerate() {
            if m != 0 {
                self.step(&mut s, row, m);
            }
        }
        s
    }

    fn weight(&self, s: &Self::State) -> usize {
        s.0.iter().zip(&s.1).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    #[inline]
    fn step(&self, s: &mut Self::State, row: usize, delta: u8) -> usize {
        let (g1, g2) = if delta == 1 {
            (&self.one[row], &self.two[row])
        } else {
            (&self.two[row], &self.one[row])
        };
        let mut w = 0u32;
        for (((a1, a2), &b1), &b2) in s.0.iter_mut().zip(s.1.iter_mut()).zip(g1).zip(g2) {
            let (r1, r2) = gf3_add(*a1, *a2, b1, b2);
            *a1 = r1;
            *a2 = r2;
            w += (r1 | r2).count_ones();
        }
        w as usize
    }
}

/// Any GF(q): one byte per coordinate, flattened addition table, and every
/// nonzero multiple of every row precomputed.
struct ByteKernel {
    q: usize,
    n: usize,
    add: Vec<u8>,
    // scaled[row * q + delta] = delta * row
    scaled: Vec<Vec<u8>>,
}

impl ByteKernel {
    fn new(code: &LinearCode) -> Self {
        let f = code.field();
        let q = f.order() as usize;
        let mut add = vec![0u8; MAX_ORDER * MAX_ORDER];
        for a in f.elements() {
            for b in f.elements() {
                add[(a as usize) * MAX_ORDER + b as usize] = f.add(a, b);
            }
        }
        let g = code.generator();
        let scaled = (0..g.rows())
            .flat_map(|r| {
                let row = g.row(r);
                (0..q as u8).map(move |d| row.iter().map(|&x| f.mul(d, x)).collect())
            })
            .collect();
        ByteKernel {
            q,
            n: code.length(),
            add,
            scaled,
        }
    }
}

impl Kernel for ByteKernel {
    type State = Vec<u8>;

    fn encode(&self, message: &[u8]) -> Vec<u8> {
        let mut s = vec![0u8; self.n];
        for (row, &m) in message.iter().enumerate() {
            if m != 0 {
                self.step(&mut s, row, m);
            }
        }
        s
    }

    fn weight(&self, s: &Vec<u8>) -> usize {
        s.iter().filter(|&&x| x != 0).count()
    }

    #[inline]
    fn step(&self, s: &mut Vec<u8>, row: usize, delta: u8) -> usize {
        let g = &self.scaled[row * self.q + delta as usize];
        let mut w = 0usize;
        for (a, &b) in s.iter_mut().zip(g) {
            *a = self.add[(*a as usize) * MAX_ORDER + b as usize];
            w += (*a != 0) as usize;
        }
        w
    }
}

/// Number of leading message digits fixed per chunk.
fn chunk_digits(q: u64, k: usize) -> usize {
    let mut t = 0;
    while t < k && q.pow(t as u32) < 64 {
        t += 1;
    }
    t
}

struct Sweep<'a, K: Kernel> {
    kernel: &'a K,
    field: &'a Field,
    k: usize,
    top: usize,
    n: usize,
    stop_at: Option<u64>,
    found: &'a AtomicBool,
}

impl<K: Kernel> Sweep<'_, K> {
    /// Histogram of one chunk: the messages whose top digits spell `chunk`
    /// in base q, low digits in reflected Gray order.
    fn chunk(&self, chunk: u64, hist: &mut [u64]) {
        let q = self.field.order() as u8;
        let low = self.k - self.top;
        let mut message = vec![0u8; self.k];
        let mut c = chunk;
        for d in message[low..].iter_mut() {
            *d = (c % q as u64) as u8;
            c /= q as u64;
        }
        let mut state = self.kernel.encode(&message);
        let w = self.kernel.weight(&state);
        hist[w] += 1;
        if self.hit(w) {
            return;
        }
        let mut moves = vec![0u8; low];
        let mut up = vec![true; low];
        let mut steps: u32 = 0;
        loop {
            let mut i = 0;
            while i < low && moves[i] == q - 1 {
                moves[i] = 0;
                up[i] = !up[i];
                i += 1;
            }
            if i == low {
                return;
            }
            moves[i] += 1;
            let old = message[i];
            let new = if up[i] { old + 1 } else { old - 1 };
            message[i] = new;
            let w = self.kernel.step(&mut state, i, self.field.sub(new, old));
            hist[w] += 1;
            if self.hit(w) {
                return;
            }
            steps = steps.wrapping_add(1);
            if self.stop_at.is_some() && steps.is_multiple_of(4096) && self.found.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    #[inline]
    fn hit(&self, w: usize) -> bool {
        if self.stop_at == Some(w as u64) && w > 0 {
            self.found.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn run(&self) -> Vec<u128> {
        let chunks = (self.field.order() as u64).pow(self.top as u32);
        let hist = (0..chunks)
            .into_par_iter()
            .fold(
                || vec![0u64; self.n + 1],
                |mut h, c| {
                    if !self.found.load(Ordering::Relaxed) {
                        self.chunk(c, &mut h);
                    }
                    h
                },
            )
            .map(|h| h.into_iter().map(u128::from).collect::<Vec<u128>>())
            .reduce(
                || vec![0u128; self.n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        hist
    }
}

fn drive<K: Kernel>(kernel: &K, code: &LinearCode, stop_at: Option<u64>) -> (Vec<u128>, bool) {
    let found = AtomicBool::new(false);
    let sweep = Sweep {
        kernel,
        field: code.field(),
        k: code.dimension(),
        top: chunk_digits(code.field().order() as u64, code.dimension()),
        n: code.length(),
        stop_at,
        found: &found,
    };
    let hist = sweep.run();
    (hist, found.load(Ordering::Relaxed))
}

/// Histogram of codeword weights (index = weight). The flag reports an
/// early stop at weight `stop_at`, in which case the histogram is partial.
pub(crate) fn codeword_histogram(code: &LinearCode, stop_at: Option<u64>) -> (Vec<u128>, bool) {
    let g = code.generator();
    match code.field().order() {
        2 => {
            let kernel = Gf2Kernel {
                rows: g.row_iter().map(pack_bits).collect(),
            };
            drive(&kernel, code, stop_at)
        }
        3 => {
            let plane = |v: u8| -> Vec<Vec<u64>> {
                g.row_iter()
                    .map(|r| pack_bits(&r.iter().map(|&x| (x == v) as u8).collect::<Vec<_>>()))
                    .collect()
            };
            let kernel = Gf3Kernel {
                one: plane(1),
                two: plane(2),
            };
            drive(&kernel, code, stop_at)
        }
        _ => drive(&ByteKernel::new(code), code, stop_at),
    }
}

/// Histogram of codeword weights from hyperplane sections: for each
/// normalized functional u on PG(K-1, q), the points off the hyperplane
/// u = 0 give the weight of the q - 1 codewords λ·uG.
pub(crate) fn hyperplane_histogram(code: &LinearCode) -> Vec<u128> {
    let f = code.field();
    let n = code.length();
    let columns = code.generator().transpose();
    let mut hist = vec![0u128; n + 1];
    hist[0] = 1;
    let scalars = f.order() as u128 - 1;
    for u in ProjectivePoints::new(code.dimension(), f) {
        let off = columns.row_iter().filter(|col| dot(&u, col, f) != 0).count();
        hist[off] += scalars;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_slices_add_like_the_table() {
        let f = Field::new(3).unwrap();
        let bit = |v: u8| ((v == 1) as u64, (v == 2) as u64);
        for a in 0..3u8 {
            for b in 0..3u8 {
                let (x1, x2) = bit(a);
                let (y1, y2) = bit(b);
                assert_eq!(gf3_add(x1, x2, y1, y2), bit(f.add(a, b)));
            }
        }
    }

    #[test]
    fn reflected_gray_visits_every_message_once() {
        // GF(5), K = 3, all digits in the Gray part
        let f = Field::new(5).unwrap();
        let g = crate::linalg::Matrix::identity(3);
        let code = LinearCode::from_generator(f, g).unwrap();
        let kernel = ByteKernel::new(&code);
        let found = AtomicBool::new(false);
        let sweep = Sweep {
            kernel: &kernel,
            field: code.field(),
            k: 3,
            top: 0,
            n: 3,
            stop_at: None,
            found: &found,
        };
        let mut h = vec![0u64; 4];
        sweep.chunk(0, &mut h);
        // weights of all 125 vectors of GF(5)^3: C(3,w) 4^w
        assert_eq!(h, vec![1, 12, 48, 64]);
    }

    #[test]
    fn chunking() {
        assert_eq!(chunk_digits(2, 14), 6);
        assert_eq!(chunk_digits(3, 14), 4);
        assert_eq!(chunk_digits(5, 2), 2);
    }
}
