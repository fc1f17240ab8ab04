//! Exact permanent by Ryser's inclusion-exclusion formula.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::SignedDigraph;
use crate::ExactValue;

/// Hard ceiling for [`per_exact`]: the subset sum has `2^n` terms, and past
/// twenty vertices a dense permanent stops being a sane thing to ask for.
pub const DEFAULT_PERMANENT_BOUND: usize = 20;

/// Permanent of the adjacency matrix, exactly.
///
/// Inclusion-exclusion over column subsets,
/// `per(A) = (-1)^n * sum_S (-1)^{|S|} * prod_i (row sum of A over S)`,
/// visited in Gray-code order so each step updates the row sums by a single
/// column. Arithmetic is arbitrary-precision throughout. The empty graph has
/// permanent 1. Graphs larger than [`DEFAULT_PERMANENT_BOUND`] are refused.
pub fn per_exact(g: &SignedDigraph) -> Result<ExactValue> {
    per_exact_bounded(g, DEFAULT_PERMANENT_BOUND)
}

/// [`per_exact`] with an explicit size ceiling.
pub fn per_exact_bounded(g: &SignedDigraph, bound: usize) -> Result<ExactValue> {
    check_bound(g, bound)?;
    let a = g.adjacency_matrix();
    #[cfg(feature = "parallel")]
    if g.n() >= 14 {
        return Ok(ryser_par(&a));
    }
    Ok(ryser_seq(&a))
}

/// Single-threaded Ryser, regardless of features. Same value, same bound.
pub fn per_exact_seq(g: &SignedDigraph) -> Result<ExactValue> {
    check_bound(g, DEFAULT_PERMANENT_BOUND)?;
    Ok(ryser_seq(&g.adjacency_matrix()))
}

/// Chunked multi-threaded Ryser. Splits the subset range, walks each chunk
/// in Gray order from a directly computed starting state, and adds the
/// partial sums; being an integer sum, the result is identical to the
/// sequential one bit for bit.
#[cfg(feature = "parallel")]
pub fn per_exact_par(g: &SignedDigraph) -> Result<ExactValue> {
    check_bound(g, DEFAULT_PERMANENT_BOUND)?;
    Ok(ryser_par(&g.adjacency_matrix()))
}

fn check_bound(g: &SignedDigraph, bound: usize) -> Result<()> {
    // 63 keeps the subset index inside a u64; no realistic bound gets near it.
    let bound = bound.min(63);
    if g.n() > bound {
        return Err(Error::SizeBound {
            what: "exact permanent",
            n: g.n(),
            bound,
        });
    }
    Ok(())
}

/// Nonzero entries of each column as `(row, weight)`, so Gray-code steps
/// touch only the rows a column actually feeds.
fn columns(a: &[Vec<i64>]) -> Vec<Vec<(usize, i64)>> {
    let n = a.len();
    (0..n)
        .map(|j| (0..n).filter(|&i| a[i][j] != 0).map(|i| (i, a[i][j])).collect())
        .collect()
}

pub(crate) fn ryser_seq(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    finish(n, ryser_chunk(a, &columns(a), 1, 1u64 << n))
}

#[cfg(feature = "parallel")]
pub(crate) fn ryser_par(a: &[Vec<i64>]) -> BigInt {
    use rayon::prelude::*;

    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let cols = columns(a);
    let end = 1u64 << n;
    let chunks = (4 * rayon::current_num_threads() as u64).min(end - 1).max(1);
    let step = (end - 1).div_ceil(chunks);
    let acc = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = 1 + c * step;
            let hi = (lo + step).min(end);
            ryser_chunk(a, &cols, lo, hi)
        })
        .reduce(BigInt::zero, |x, y| x + y);
    finish(n, acc)
}

fn finish(n: usize, acc: BigInt) -> BigInt {
    if n % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// Adds up `(-1)^{|S|} * prod_i rowsum_i(S)` for the subsets with Gray codes
/// `g ^ (g >> 1)`, `g` in `lo..hi`.
fn ryser_chunk(a: &[Vec<i64>], cols: &[Vec<(usize, i64)>], lo: u64, hi: u64) -> BigInt {
    let mut gray = lo ^ (lo >> 1);
    let mut rows: Vec<BigInt> = a
        .iter()
        .map(|row| {
            let mut s = BigInt::zero();
            for (j, &v) in row.iter().enumerate() {
                if gray >> j & 1 == 1 {
                    s += v;
                }
            }
            s
        })
        .collect();
    let mut ones = gray.count_ones();
    let mut acc = BigInt::zero();
    let mut g = lo;
    loop {
        let mut term = BigInt::one();
        for r in &rows {
            if r.is_zero() {
                term = BigInt::zero();
                break;
            }
            term *= r;
        }
        if ones.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        g += 1;
        if g == hi {
            return acc;
        }
        let col = g.trailing_zeros();
        let bit = 1u64 << col;
        gray ^= bit;
        if gray & bit != 0 {
            ones += 1;
            for &(i, w) in &cols[col as usize] {
                rows[i] += w;
            }
        } else {
            ones -= 1;
            for &(i, w) in &cols[col as usize] {
                rows[i] -= w;
            }
        }
    }
}
