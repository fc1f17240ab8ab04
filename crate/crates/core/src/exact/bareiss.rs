//! Exact determinant by fraction-free elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::SignedDigraph;
use crate::ExactValue;

/// Determinant of the adjacency matrix, exactly.
///
/// Fraction-free Gaussian elimination: after each step every entry is the
/// determinant of a minor of the original integer matrix, and the division
/// by the previous pivot is exact, so no rationals and no rounding appear at
/// any point. Row swaps track the sign. The empty graph has determinant 1
/// (the empty product).
pub fn det_exact(g: &SignedDigraph) -> ExactValue {
    det_bareiss(&g.adjacency_matrix())
}

pub(crate) fn det_bareiss(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let head = std::mem::replace(&mut row[k], BigInt::zero());
            for j in k + 1..n {
                let t = (&row[j] * &pivot_row[k] - &head * &pivot_row[j]) / &prev;
                row[j] = t;
            }
        }
        prev = pivot_row[k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor expansion along the first row: exponential, independent of
    /// the elimination path, and obviously correct.
    fn det_cofactor(a: &[Vec<BigInt>]) -> BigInt {
        let n = a.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if a[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| a[i][c].clone())
                        .collect()
                })
                .collect();
            let term = &a[0][j] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn complete(n: usize) -> SignedDigraph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v, 1));
            }
        }
        SignedDigraph::undirected(n, &edges).unwrap()
    }

    #[test]
    fn small_fixed_values() {
        assert_eq!(det_exact(&SignedDigraph::new(0, &[]).unwrap()), 1.into());
        assert_eq!(det_exact(&SignedDigraph::new(1, &[]).unwrap()), 0.into());
        // det of complete graphs: 0, -1, 2, -3, 4, ...
        for (n, want) in [(1, 0), (2, -1), (3, 2), (4, -3), (5, 4)] {
            assert_eq!(det_exact(&complete(n)), want.into(), "K_{n}");
        }
    }

    #[test]
    fn loops_feed_the_diagonal() {
        let g = SignedDigraph::with_loops(2, &[(0, 0, 3), (1, 1, -2)]).unwrap();
        assert_eq!(det_exact(&g), (-6).into());
    }

    #[test]
    fn permutation_matrix_sign() {
        // The 3-cycle permutation matrix has determinant +1.
        let g = SignedDigraph::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(det_exact(&g), 1.into());
        // A transposition has determinant -1 (plus a fixed loop for size 3).
        let t = SignedDigraph::with_loops(3, &[(0, 1, 1), (1, 0, 1), (2, 2, 1)]).unwrap();
        assert_eq!(det_exact(&t), (-1).into());
    }

    #[test]
    fn singular_when_a_column_is_unreachable() {
        // Vertex 2 has no in-arcs: column of zeros.
        let g = SignedDigraph::new(3, &[(0, 1, 1), (1, 0, 1), (2, 0, 1)]).unwrap();
        assert_eq!(det_exact(&g), 0.into());
    }

    #[test]
    fn matches_cofactor_expansion_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in 0..200 {
            let n = rng.gen_range(0..=6);
            let mut arcs = Vec::new();
            for u in 0..n as u32 {
                for v in 0..n as u32 {
                    let w: i64 = rng.gen_range(-3..=3);
                    if w != 0 && rng.gen_bool(0.6) {
                        arcs.push((u, v, w));
                    }
                }
            }
            let g = SignedDigraph::with_loops(n, &arcs).unwrap();
            let dense: Vec<Vec<BigInt>> = g
                .adjacency_matrix()
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            assert_eq!(det_exact(&g), det_cofactor(&dense), "case {case}");
        }
    }
}
