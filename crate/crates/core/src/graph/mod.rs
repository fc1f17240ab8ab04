//! Signed digraphs with exact integer arc weights, and the structural
//! operations the evaluation engines are built on: induced subgraphs,
//! block/cut-vertex decomposition, balance testing, and a plain-text
//! interchange format.

mod balance;
mod blocks;
mod format;

pub use balance::{is_balanced, Balance, SwitchingSignature};
pub use blocks::{block_decompose, BlockDecomposition};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A finite digraph on vertices `0..n` with nonzero exact integer arc weights.
///
/// An undirected signed edge is the pair of arcs `(u, v)` and `(v, u)` with
/// equal weight. A weight of zero is rejected at construction, so "no arc"
/// has exactly one representation and equality of graphs is equality of arc
/// maps. Arcs are kept in a sorted map; every iteration order derived from it
/// is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDigraph {
    n: usize,
    arcs: BTreeMap<(u32, u32), i64>,
}

impl SignedDigraph {
    /// Builds a loop-free digraph from explicit arcs.
    pub fn new(n: usize, arcs: &[(u32, u32, i64)]) -> Result<Self> {
        Self::build(n, arcs, false)
    }

    /// Builds a digraph in which self-loops are permitted.
    pub fn with_loops(n: usize, arcs: &[(u32, u32, i64)]) -> Result<Self> {
        Self::build(n, arcs, true)
    }

    /// Builds an undirected signed graph: each listed edge becomes the
    /// symmetric pair of arcs with the given weight.
    pub fn undirected(n: usize, edges: &[(u32, u32, i64)]) -> Result<Self> {
        let mut arcs = Vec::with_capacity(edges.len() * 2);
        for &(u, v, w) in edges {
            arcs.push((u, v, w));
            arcs.push((v, u, w));
        }
        Self::build(n, &arcs, false)
    }

    fn build(n: usize, arcs: &[(u32, u32, i64)], allow_loops: bool) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(u, v, w) in arcs {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if w == 0 {
                return Err(Error::ZeroWeightArc { from: u, to: v });
            }
            if u == v && !allow_loops {
                return Err(Error::SelfLoop { vertex: u });
            }
            if map.insert((u, v), w).is_some() {
                return Err(Error::DuplicateArc { from: u, to: v });
            }
        }
        Ok(SignedDigraph { n, arcs: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// All arcs as `(from, to, weight)`, in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.arcs.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn weight(&self, u: u32, v: u32) -> Option<i64> {
        self.arcs.get(&(u, v)).copied()
    }

    /// Out-arcs of `u` as `(head, weight)`, heads ascending.
    pub fn out_arcs(&self, u: u32) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.arcs
            .range((u, 0)..=(u, u32::MAX))
            .map(|(&(_, v), &w)| (v, w))
    }

    pub fn has_loops(&self) -> bool {
        self.arcs.keys().any(|&(u, v)| u == v)
    }

    pub fn has_loop_at(&self, v: u32) -> bool {
        self.arcs.contains_key(&(v, v))
    }

    /// True when every arc has a reverse partner of equal weight.
    pub fn is_symmetric(&self) -> bool {
        self.arcs
            .iter()
            .all(|(&(u, v), &w)| self.weight(v, u) == Some(w))
    }

    /// Dense adjacency matrix, `a[u][v]` = weight of arc `(u, v)` or 0.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for (&(u, v), &w) in &self.arcs {
            a[u as usize][v as usize] = w;
        }
        a
    }

    /// The unsigned version: every weight replaced by its absolute value.
    pub fn underlying(&self) -> SignedDigraph {
        SignedDigraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|(&k, &w)| (k, w.abs()))
                .collect(),
        }
    }

    /// Arc-reversed copy: weight of `(u, v)` becomes weight of `(v, u)`.
    pub fn transpose(&self) -> SignedDigraph {
        SignedDigraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|(&(u, v), &w)| ((v, u), w))
                .collect(),
        }
    }

    /// Subgraph induced by `vertices`, relabeled onto `0..vertices.len()`.
    ///
    /// Returns the subgraph together with the relabeling: entry `i` of the
    /// returned vector is the original label of new vertex `i` (originals in
    /// ascending order).
    pub fn induced_subgraph(&self, vertices: &BTreeSet<u32>) -> Result<(SignedDigraph, Vec<u32>)> {
        for &v in vertices {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let old_of_new: Vec<u32> = vertices.iter().copied().collect();
        let new_of_old: BTreeMap<u32, u32> = old_of_new
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let arcs = self
            .arcs
            .iter()
            .filter_map(|(&(u, v), &w)| {
                Some(((*new_of_old.get(&u)?, *new_of_old.get(&v)?), w))
            })
            .collect();
        Ok((
            SignedDigraph {
                n: old_of_new.len(),
                arcs,
            },
            old_of_new,
        ))
    }

    /// Switches the graph by a signature: weight of `(u, v)` becomes
    /// `s_u * w * s_v`. Switching never changes determinants, permanents,
    /// or cycle signs.
    pub fn conjugate(&self, sig: &SwitchingSignature) -> Result<SignedDigraph> {
        if sig.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "signature has {} entries for a graph on {} vertices",
                sig.len(),
                self.n
            )));
        }
        Ok(SignedDigraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|(&(u, v), &w)| ((u, v), sig.sign(u) * w * sig.sign(v)))
                .collect(),
        })
    }

    /// Sign (+1 or -1) of the weight product along a closed walk.
    ///
    /// `cycle` lists distinct vertices; every consecutive pair and the
    /// closing pair (last, first) must be arcs of the graph. A single vertex
    /// is accepted when it carries a loop.
    pub fn cycle_sign(&self, cycle: &[u32]) -> Result<i64> {
        if cycle.is_empty() {
            return Err(Error::InvalidParameter(
                "cycle must contain at least one vertex".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &v in cycle {
            if !seen.insert(v) {
                return Err(Error::InvalidParameter(format!(
                    "cycle repeats vertex {v}"
                )));
            }
        }
        let mut sign = 1i64;
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            match self.weight(u, v) {
                Some(w) => sign *= w.signum(),
                None => return Err(Error::NonEdge { from: u, to: v }),
            }
        }
        Ok(sign)
    }

    /// Neighbors in the undirected support (arcs in either direction).
    pub(crate) fn support_neighbors(&self) -> Vec<BTreeSet<u32>> {
        let mut nb = vec![BTreeSet::new(); self.n];
        for &(u, v) in self.arcs.keys() {
            if u != v {
                nb[u as usize].insert(v);
                nb[v as usize].insert(u);
            }
        }
        nb
    }

    /// Connected components of the undirected support, each sorted, ordered
    /// by smallest member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let nb = self.support_neighbors();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s as u32]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &nb[u as usize] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when the undirected support is connected (vacuously for n = 0).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> SignedDigraph {
        SignedDigraph::undirected(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = SignedDigraph::new(2, &[(0, 2, 1)]).unwrap_err();
        assert_eq!(err, Error::VertexOutOfRange { vertex: 2, n: 2 });
    }

    #[test]
    fn rejects_duplicate_arc() {
        let err = SignedDigraph::new(3, &[(0, 1, 1), (0, 1, -1)]).unwrap_err();
        assert_eq!(err, Error::DuplicateArc { from: 0, to: 1 });
    }

    #[test]
    fn rejects_zero_weight() {
        let err = SignedDigraph::new(3, &[(0, 1, 0)]).unwrap_err();
        assert_eq!(err, Error::ZeroWeightArc { from: 0, to: 1 });
    }

    #[test]
    fn loop_needs_explicit_opt_in() {
        assert_eq!(
            SignedDigraph::new(2, &[(1, 1, 1)]).unwrap_err(),
            Error::SelfLoop { vertex: 1 }
        );
        let g = SignedDigraph::with_loops(2, &[(1, 1, 1), (0, 1, 1)]).unwrap();
        assert!(g.has_loop_at(1));
        assert!(!g.has_loop_at(0));
    }

    #[test]
    fn underlying_strips_signs_and_is_idempotent() {
        let g = SignedDigraph::undirected(3, &[(0, 1, -1), (1, 2, 1)]).unwrap();
        let u = g.underlying();
        assert_eq!(u.weight(0, 1), Some(1));
        assert_eq!(u.weight(1, 0), Some(1));
        assert_eq!(u.underlying(), u);
    }

    #[test]
    fn induced_on_full_vertex_set_is_identity() {
        let g = k3();
        let all: BTreeSet<u32> = (0..3).collect();
        let (h, map) = g.induced_subgraph(&all).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn induced_relabels_ascending() {
        let g = SignedDigraph::undirected(4, &[(0, 2, -1), (2, 3, 1), (0, 3, 1), (1, 2, 1)])
            .unwrap();
        let (h, map) = g.induced_subgraph(&BTreeSet::from([0, 2, 3])).unwrap();
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(h.weight(0, 1), Some(-1)); // old (0, 2)
        assert_eq!(h.weight(1, 2), Some(1)); // old (2, 3)
        assert_eq!(h.weight(0, 2), Some(1)); // old (0, 3)
        assert_eq!(h.arc_count(), 6);
    }

    #[test]
    fn cycle_sign_positive_and_negative() {
        let c5 = SignedDigraph::undirected(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)],
        )
        .unwrap();
        assert_eq!(c5.cycle_sign(&[0, 1, 2, 3, 4]).unwrap(), 1);

        let neg =
            SignedDigraph::undirected(3, &[(0, 1, -1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(neg.cycle_sign(&[0, 1, 2]).unwrap(), -1);
        // Any adjacent pair closes into a two-cycle in an undirected graph.
        assert_eq!(neg.cycle_sign(&[0, 2]).unwrap(), 1);

        let path = SignedDigraph::undirected(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(
            path.cycle_sign(&[0, 2]).unwrap_err(),
            Error::NonEdge { from: 0, to: 2 }
        );
    }

    #[test]
    fn conjugation_flips_matching_arcs() {
        let g = SignedDigraph::undirected(3, &[(0, 1, -1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let sig = SwitchingSignature::new(vec![-1, 1, 1]).unwrap();
        let h = g.conjugate(&sig).unwrap();
        assert_eq!(h.weight(0, 1), Some(1));
        assert_eq!(h.weight(1, 0), Some(1));
        assert_eq!(h.weight(2, 0), Some(-1));
        assert_eq!(h.weight(1, 2), Some(1));
    }

    #[test]
    fn components_and_connectivity() {
        let g = SignedDigraph::new(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!g.is_connected());
        assert!(k3().is_connected());
        assert!(SignedDigraph::new(0, &[]).unwrap().is_connected());
    }

    #[test]
    fn transpose_reverses_arcs() {
        let g = SignedDigraph::new(3, &[(0, 1, 2), (1, 2, -1)]).unwrap();
        let t = g.transpose();
        assert_eq!(t.weight(1, 0), Some(2));
        assert_eq!(t.weight(2, 1), Some(-1));
        assert_eq!(t.weight(0, 1), None);
        assert_eq!(t.transpose(), g);
    }
}
