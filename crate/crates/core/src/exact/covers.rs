//! Cycle covers: spanning collections of vertex-disjoint directed cycles.
//!
//! Both quantities of interest are plain sums over covers: the permanent
//! adds the weight products, the determinant weighs each cover by the parity
//! of its cycle count and flips the total by the parity of n. This is the
//! slowest evaluator in the crate and also the one closest to the
//! definitions, which is exactly what makes it a good referee.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::SignedDigraph;
use crate::ExactValue;

/// Hard ceiling for cover enumeration; a dense digraph on ten vertices
/// already has up to 10! covers.
pub const CYCLE_COVER_BOUND: usize = 10;

/// One spanning set of vertex-disjoint directed cycles.
///
/// Each cycle is written starting from its smallest vertex; cycles are
/// listed with their smallest vertices ascending. Loops count as one-vertex
/// cycles, a symmetric edge pair as a two-vertex cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCover {
    pub cycles: Vec<Vec<u32>>,
    /// Product of the weights of every arc used.
    pub weight: ExactValue,
}

impl CycleCover {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }
}

/// Calls `f` for every cycle cover of `g`, in a fixed deterministic order.
///
/// The empty graph has exactly one cover (no cycles, weight 1). A graph in
/// which some vertex lies on no cycle has none.
pub fn for_each_cycle_cover<F: FnMut(&CycleCover)>(g: &SignedDigraph, f: F) -> Result<()> {
    if g.n() > CYCLE_COVER_BOUND {
        return Err(Error::SizeBound {
            what: "cycle-cover enumeration",
            n: g.n(),
            bound: CYCLE_COVER_BOUND,
        });
    }
    let mut walker = Walker {
        g,
        visited: vec![false; g.n()],
        cycles: Vec::new(),
        cycle_weights: Vec::new(),
        path: Vec::new(),
        path_weights: Vec::new(),
        f,
    };
    walker.cover_rest();
    Ok(())
}

/// All cycle covers, materialized.
pub fn cycle_covers(g: &SignedDigraph) -> Result<Vec<CycleCover>> {
    let mut out = Vec::new();
    for_each_cycle_cover(g, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Determinant as the signed cover sum:
/// `(-1)^n * sum_covers (-1)^{#cycles} * weight`.
pub fn det_via_cycle_covers(g: &SignedDigraph) -> Result<ExactValue> {
    let mut acc = BigInt::zero();
    for_each_cycle_cover(g, |c| {
        if c.cycle_count() % 2 == 0 {
            acc += &c.weight;
        } else {
            acc -= &c.weight;
        }
    })?;
    Ok(if g.n() % 2 == 1 { -acc } else { acc })
}

/// Permanent as the plain cover sum of weights.
pub fn per_via_cycle_covers(g: &SignedDigraph) -> Result<ExactValue> {
    let mut acc = BigInt::zero();
    for_each_cycle_cover(g, |c| acc += &c.weight)?;
    Ok(acc)
}

struct Walker<'a, F: FnMut(&CycleCover)> {
    g: &'a SignedDigraph,
    visited: Vec<bool>,
    cycles: Vec<Vec<u32>>,
    cycle_weights: Vec<BigInt>,
    path: Vec<u32>,
    path_weights: Vec<i64>,
    f: F,
}

impl<F: FnMut(&CycleCover)> Walker<'_, F> {
    /// Covers the smallest unvisited vertex with every possible cycle, then
    /// recurses on the rest. Every cycle contains the smallest unvisited
    /// vertex of its moment, so each cover is produced exactly once.
    fn cover_rest(&mut self) {
        let Some(start) = self.visited.iter().position(|&v| !v) else {
            let weight = self.cycle_weights.iter().product();
            (self.f)(&CycleCover {
                cycles: self.cycles.clone(),
                weight,
            });
            return;
        };
        let start = start as u32;
        self.visited[start as usize] = true;
        self.path.push(start);
        self.extend_cycle(start, start);
        self.path.pop();
        self.visited[start as usize] = false;
    }

    fn extend_cycle(&mut self, start: u32, cur: u32) {
        let arcs: Vec<(u32, i64)> = self.g.out_arcs(cur).collect();
        for (v, w) in arcs {
            if v == start {
                // Closing arc; the loop arc closes the one-vertex cycle.
                let mut weight: BigInt =
                    self.path_weights.iter().map(|&x| BigInt::from(x)).product();
                weight *= w;
                self.cycles.push(self.path.clone());
                self.cycle_weights.push(weight);
                // The finished cycle is folded into `cycle_weights`; hand the
                // recursion empty stacks so the next cycle starts clean.
                let saved_path = std::mem::take(&mut self.path);
                let saved_weights = std::mem::take(&mut self.path_weights);
                self.cover_rest();
                self.path = saved_path;
                self.path_weights = saved_weights;
                self.cycle_weights.pop();
                self.cycles.pop();
            } else if !self.visited[v as usize] {
                self.visited[v as usize] = true;
                self.path.push(v);
                self.path_weights.push(w);
                self.extend_cycle(start, v);
                self.path_weights.pop();
                self.path.pop();
                self.visited[v as usize] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected_cycle(n: usize, last_weight: i64) -> SignedDigraph {
        let mut edges: Vec<(u32, u32, i64)> =
            (0..n as u32 - 1).map(|i| (i, i + 1, 1)).collect();
        edges.push((n as u32 - 1, 0, last_weight));
        SignedDigraph::undirected(n, &edges).unwrap()
    }

    #[test]
    fn directed_triangle_has_one_cover() {
        let g = SignedDigraph::new(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let covers = cycle_covers(&g).unwrap();
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].cycles, vec![vec![0, 1, 2]]);
        assert_eq!(covers[0].weight, 1.into());
        assert_eq!(det_via_cycle_covers(&g).unwrap(), 1.into());
    }

    #[test]
    fn undirected_square_has_four_covers() {
        // Two orientations of the full cycle plus two perfect matchings.
        let covers = cycle_covers(&undirected_cycle(4, 1)).unwrap();
        assert_eq!(covers.len(), 4);
        let sizes: Vec<usize> = covers.iter().map(CycleCover::cycle_count).collect();
        assert_eq!(sizes.iter().filter(|&&c| c == 1).count(), 2);
        assert_eq!(sizes.iter().filter(|&&c| c == 2).count(), 2);
        // Each matching cover lists its own two 2-cycles, nothing more.
        for c in covers.iter().filter(|c| c.cycle_count() == 2) {
            assert!(c.cycles == vec![vec![0, 1], vec![2, 3]]
                || c.cycles == vec![vec![0, 3], vec![1, 2]]);
        }
    }

    #[test]
    fn second_cycle_weight_ignores_the_first() {
        // Path 0 -(-1)- 1 -(+1)- 2 -(+1)- 3: the only cover is the perfect
        // matching {01, 23} with weight (-1)^2 * 1^2 = 1. A walker that
        // leaks the first 2-cycle's arc weights into the second would
        // report -1 here.
        let g =
            SignedDigraph::undirected(4, &[(0, 1, -1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let covers = cycle_covers(&g).unwrap();
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].cycles, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(covers[0].weight, 1.into());
        assert_eq!(per_via_cycle_covers(&g).unwrap(), 1.into());
        assert_eq!(det_via_cycle_covers(&g).unwrap(), 1.into());
    }

    #[test]
    fn balanced_five_cycle() {
        let g = undirected_cycle(5, 1);
        assert_eq!(det_via_cycle_covers(&g).unwrap(), 2.into());
        assert_eq!(per_via_cycle_covers(&g).unwrap(), 2.into());
    }

    #[test]
    fn vertex_on_no_cycle_means_no_covers() {
        // An edge plus an isolated vertex: nothing covers vertex 2.
        let g = SignedDigraph::undirected(3, &[(0, 1, 1)]).unwrap();
        assert!(cycle_covers(&g).unwrap().is_empty());
        assert_eq!(det_via_cycle_covers(&g).unwrap(), 0.into());
        assert_eq!(per_via_cycle_covers(&g).unwrap(), 0.into());
    }

    #[test]
    fn empty_graph_has_the_empty_cover() {
        let g = SignedDigraph::new(0, &[]).unwrap();
        let covers = cycle_covers(&g).unwrap();
        assert_eq!(covers.len(), 1);
        assert!(covers[0].cycles.is_empty());
        assert_eq!(covers[0].weight, 1.into());
        assert_eq!(det_via_cycle_covers(&g).unwrap(), 1.into());
        assert_eq!(per_via_cycle_covers(&g).unwrap(), 1.into());
    }

    #[test]
    fn loops_are_one_cycles() {
        let g = SignedDigraph::with_loops(1, &[(0, 0, 5)]).unwrap();
        let covers = cycle_covers(&g).unwrap();
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].cycles, vec![vec![0]]);
        assert_eq!(covers[0].weight, 5.into());
        // det of the 1x1 matrix [5].
        assert_eq!(det_via_cycle_covers(&g).unwrap(), 5.into());
    }

    #[test]
    fn complete_graph_covers_are_derangements() {
        let mut edges = Vec::new();
        for u in 0..4u32 {
            for v in u + 1..4 {
                edges.push((u, v, 1));
            }
        }
        let k4 = SignedDigraph::undirected(4, &edges).unwrap();
        assert_eq!(cycle_covers(&k4).unwrap().len(), 9);
        assert_eq!(per_via_cycle_covers(&k4).unwrap(), 9.into());
        assert_eq!(det_via_cycle_covers(&k4).unwrap(), (-3).into());
    }

    #[test]
    fn refuses_oversized_graphs() {
        let g = SignedDigraph::new(11, &[]).unwrap();
        assert_eq!(
            cycle_covers(&g).unwrap_err(),
            Error::SizeBound {
                what: "cycle-cover enumeration",
                n: 11,
                bound: 10
            }
        );
    }

    #[test]
    fn enumeration_order_is_stable() {
        let g = undirected_cycle(4, 1);
        let a = cycle_covers(&g).unwrap();
        let b = cycle_covers(&g).unwrap();
        assert_eq!(a, b);
    }
}
