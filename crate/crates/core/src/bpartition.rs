//! Evaluation by blocks.
//!
//! For a connected graph whose cut vertices carry no loops, the determinant
//! (and likewise the permanent) is a sum over *B-partitions*: assignments of
//! every vertex to a block containing it. Non-cut vertices have no choice;
//! each cut vertex independently picks one of its blocks. A partition
//! contributes the product, over blocks, of the value of the block minus the
//! cut vertices it lost. Exponential enumeration over `2^n` subsets is thus
//! replaced by a product of per-block tables — for graphs with many small
//! blocks that is the difference between hopeless and instant.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{det_exact, per_exact_bounded, DEFAULT_PERMANENT_BOUND};
use crate::graph::{block_decompose, BlockDecomposition, SignedDigraph};
use crate::ExactValue;

/// One assignment of every vertex to a block containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPartition {
    parts: Vec<Vec<u32>>,
}

impl BPartition {
    /// The vertices assigned to each block, sorted, one entry per block in
    /// the decomposition's block order. Parts may be empty.
    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn sizes(&self) -> AlphaTuple {
        AlphaTuple(self.parts.iter().map(Vec::len).collect())
    }
}

/// Part sizes of a B-partition, one entry per block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlphaTuple(pub Vec<usize>);

impl AlphaTuple {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Iterator over all B-partitions, in a fixed order: cut vertices ascending,
/// each sweeping its incident blocks in ascending index order, the last cut
/// vertex fastest.
pub struct BPartitionIter<'a> {
    engine: Engine<'a>,
    next: u64,
}

impl Iterator for BPartitionIter<'_> {
    type Item = BPartition;

    fn next(&mut self) -> Option<BPartition> {
        if self.next >= self.engine.total {
            return None;
        }
        let p = self.engine.partition(self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.engine.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for BPartitionIter<'_> {}

/// Enumerates the B-partitions of `g` under the decomposition `d`.
///
/// There are exactly `prod_{cut v} (#blocks containing v)` of them. A loop
/// on a cut vertex invalidates the whole block-sum identity, so it is
/// rejected here rather than silently miscounted.
pub fn bpartitions<'a>(
    g: &'a SignedDigraph,
    d: &'a BlockDecomposition,
) -> Result<BPartitionIter<'a>> {
    Ok(BPartitionIter {
        engine: Engine::new(g, d)?,
        next: 0,
    })
}

/// Number of B-partitions without enumerating them.
pub fn bpartition_count(g: &SignedDigraph, d: &BlockDecomposition) -> Result<u64> {
    Ok(Engine::new(g, d)?.total)
}

/// Part-size tuples of all B-partitions, in enumeration order.
///
/// No two B-partitions share a tuple, so this is also the list of all size
/// tuples realizable by the block structure.
pub fn alpha_tuples(g: &SignedDigraph, d: &BlockDecomposition) -> Result<Vec<AlphaTuple>> {
    let engine = Engine::new(g, d)?;
    Ok((0..engine.total).map(|i| engine.alpha(i)).collect())
}

/// The same tuple set obtained the hard way, as a cross-check: enumerate all
/// non-negative integer tuples summing to n and keep those satisfying every
/// subset constraint `sum_{i in S} alpha_i <= |union of the blocks in S|`.
/// Exponential in the number of blocks; meant for tests, independent of the
/// assignment-based enumeration above.
pub fn alpha_tuples_by_constraints(d: &BlockDecomposition) -> Vec<AlphaTuple> {
    let k = d.block_count();
    let sizes: Vec<usize> = d.blocks().iter().map(Vec::len).collect();
    let mut suffix = vec![0usize; k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(
        d: &BlockDecomposition,
        sizes: &[usize],
        suffix: &[usize],
        cur: &mut Vec<usize>,
        i: usize,
        rem: usize,
        out: &mut Vec<AlphaTuple>,
    ) {
        let k = sizes.len();
        if i == k {
            if rem == 0 && satisfies_union_constraints(d, cur) {
                out.push(AlphaTuple(cur.clone()));
            }
            return;
        }
        if rem > suffix[i] {
            return;
        }
        for a in 0..=sizes[i].min(rem) {
            cur[i] = a;
            rec(d, sizes, suffix, cur, i + 1, rem - a, out);
        }
        cur[i] = 0;
    }
    rec(d, &sizes, &suffix, &mut cur, 0, d.n(), &mut out);
    out
}

fn satisfies_union_constraints(d: &BlockDecomposition, alpha: &[usize]) -> bool {
    let k = alpha.len();
    debug_assert!(k < 26, "constraint check is exponential in block count");
    for mask in 1u32..(1 << k) {
        let blocks: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let total: usize = blocks.iter().map(|&i| alpha[i]).sum();
        if total > d.union_size(&blocks) {
            return false;
        }
    }
    true
}

/// Determinant as the B-partition sum of per-part determinant products.
pub fn det_via_bpartitions(g: &SignedDigraph, d: &BlockDecomposition) -> Result<ExactValue> {
    let engine = Engine::new(g, d)?;
    let tables = engine.tables(&|h| Ok(det_exact(h)))?;
    Ok(engine.sum(&tables))
}

/// Permanent as the B-partition sum of per-part permanent products. Parts
/// are at most block-sized, so the dense-permanent ceiling applies to the
/// largest block, not to the whole graph.
pub fn per_via_bpartitions(g: &SignedDigraph, d: &BlockDecomposition) -> Result<ExactValue> {
    let engine = Engine::new(g, d)?;
    let tables = engine.tables(&|h| per_exact_bounded(h, DEFAULT_PERMANENT_BOUND))?;
    Ok(engine.sum(&tables))
}

/// Sequential variants, for benchmarking against the parallel dispatch.
pub fn det_via_bpartitions_seq(g: &SignedDigraph, d: &BlockDecomposition) -> Result<ExactValue> {
    let engine = Engine::new(g, d)?;
    let tables = engine.tables(&|h| Ok(det_exact(h)))?;
    Ok(engine.sum_seq(&tables))
}

pub fn per_via_bpartitions_seq(g: &SignedDigraph, d: &BlockDecomposition) -> Result<ExactValue> {
    let engine = Engine::new(g, d)?;
    let tables = engine.tables(&|h| per_exact_bounded(h, DEFAULT_PERMANENT_BOUND))?;
    Ok(engine.sum_seq(&tables))
}

#[cfg(feature = "parallel")]
pub fn det_via_bpartitions_par(g: &SignedDigraph, d: &BlockDecomposition) -> Result<ExactValue> {
    let engine = Engine::new(g, d)?;
    let tables = engine.tables(&|h| Ok(det_exact(h)))?;
    Ok(engine.sum_par(&tables))
}

#[cfg(feature = "parallel")]
pub fn per_via_bpartitions_par(g: &SignedDigraph, d: &BlockDecomposition) -> Result<ExactValue> {
    let engine = Engine::new(g, d)?;
    let tables = engine.tables(&|h| per_exact_bounded(h, DEFAULT_PERMANENT_BOUND))?;
    Ok(engine.sum_par(&tables))
}

/// Two-term split at a cut vertex: for a subgraph H containing v whose
/// remainder `H - v` is a union of connected components of `g - v`,
///
/// `det(g) = det(H) * det(g - H) + det(H - v) * det(g - (H - v))`,
///
/// and this function returns that right-hand side. The permanent version is
/// [`split_at_cut_vertex_per`].
pub fn split_at_cut_vertex_det(
    g: &SignedDigraph,
    h: &BTreeSet<u32>,
    v: u32,
) -> Result<ExactValue> {
    split_at_cut_vertex(g, h, v, &|p| Ok(det_exact(p)))
}

pub fn split_at_cut_vertex_per(
    g: &SignedDigraph,
    h: &BTreeSet<u32>,
    v: u32,
) -> Result<ExactValue> {
    split_at_cut_vertex(g, h, v, &|p| per_exact_bounded(p, DEFAULT_PERMANENT_BOUND))
}

fn split_at_cut_vertex(
    g: &SignedDigraph,
    h: &BTreeSet<u32>,
    v: u32,
    eval: &dyn Fn(&SignedDigraph) -> Result<ExactValue>,
) -> Result<ExactValue> {
    if !h.contains(&v) {
        return Err(Error::NotSeparable {
            vertex: v,
            reason: "the split vertex must belong to the chosen subgraph".into(),
        });
    }
    let d = block_decompose(g)?;
    if !d.is_cut_vertex(v) {
        return Err(Error::NotSeparable {
            vertex: v,
            reason: "not a cut vertex".into(),
        });
    }
    let all: BTreeSet<u32> = (0..g.n() as u32).collect();
    let h_minus_v: BTreeSet<u32> = h.iter().copied().filter(|&x| x != v).collect();
    let without_v: BTreeSet<u32> = all.iter().copied().filter(|&x| x != v).collect();
    // h - v must be a union of whole components of g - v.
    let (rest_graph, rest_labels) = g.induced_subgraph(&without_v)?;
    for comp in rest_graph.components() {
        let original: BTreeSet<u32> = comp.iter().map(|&i| rest_labels[i as usize]).collect();
        let inside = original.intersection(&h_minus_v).count();
        if inside != 0 && inside != original.len() {
            return Err(Error::NotSeparable {
                vertex: v,
                reason: format!(
                    "the subgraph cuts through a component of the graph minus {v}"
                ),
            });
        }
    }
    let complement: BTreeSet<u32> = all.difference(h).copied().collect();
    let complement_plus_v: BTreeSet<u32> = all.difference(&h_minus_v).copied().collect();
    let value = |set: &BTreeSet<u32>| -> Result<ExactValue> {
        let (part, _) = g.induced_subgraph(set)?;
        eval(&part)
    };
    Ok(value(h)? * value(&complement)? + value(&h_minus_v)? * value(&complement_plus_v)?)
}

// ── the shared enumeration engine ───────────────────────────────────────────

struct Engine<'a> {
    g: &'a SignedDigraph,
    d: &'a BlockDecomposition,
    /// Non-cut vertices of each block.
    base: Vec<Vec<u32>>,
    /// Cut vertices of each block, ascending; position = bit in the table
    /// mask of that block.
    block_cuts: Vec<Vec<u32>>,
    /// Per cut vertex: the blocks containing it, and for each the bit it
    /// occupies in that block's mask.
    cut_choices: Vec<Vec<(usize, u64)>>,
    /// Mixed-radix digit weights for decoding a partition index.
    radix: Vec<u64>,
    total: u64,
}

impl<'a> Engine<'a> {
    fn new(g: &'a SignedDigraph, d: &'a BlockDecomposition) -> Result<Engine<'a>> {
        if d.n() != g.n() {
            return Err(Error::InvalidParameter(format!(
                "decomposition is for {} vertices, graph has {}",
                d.n(),
                g.n()
            )));
        }
        for &v in d.cut_vertices() {
            if g.has_loop_at(v) {
                return Err(Error::LoopOnCutVertex { vertex: v });
            }
        }
        let k = d.block_count();
        let mut base = vec![Vec::new(); k];
        for (i, block) in d.blocks().iter().enumerate() {
            for &v in block {
                if !d.is_cut_vertex(v) {
                    base[i].push(v);
                }
            }
        }
        let mut block_cuts = vec![Vec::new(); k];
        for &v in d.cut_vertices() {
            for &b in d.blocks_containing(v) {
                block_cuts[b].push(v);
            }
        }
        let cut_choices: Vec<Vec<(usize, u64)>> = d
            .cut_vertices()
            .iter()
            .map(|&v| {
                d.blocks_containing(v)
                    .iter()
                    .map(|&b| {
                        let bit = block_cuts[b].iter().position(|&x| x == v).unwrap();
                        (b, 1u64 << bit)
                    })
                    .collect()
            })
            .collect();
        let mut total: u64 = 1;
        let mut radix = vec![1u64; cut_choices.len()];
        for j in (0..cut_choices.len()).rev() {
            radix[j] = total;
            total = total
                .checked_mul(cut_choices[j].len() as u64)
                .ok_or_else(|| {
                    Error::InvalidParameter("more than 2^64 B-partitions".into())
                })?;
        }
        Ok(Engine {
            g,
            d,
            base,
            block_cuts,
            cut_choices,
            radix,
            total,
        })
    }

    /// The block index chosen for each cut vertex at partition index `idx`.
    fn digits(&self, idx: u64) -> impl Iterator<Item = usize> + '_ {
        self.cut_choices
            .iter()
            .zip(&self.radix)
            .map(move |(choices, &r)| (idx / r) as usize % choices.len())
    }

    fn partition(&self, idx: u64) -> BPartition {
        let mut parts = self.base.clone();
        for (j, digit) in self.digits(idx).enumerate() {
            let (block, _) = self.cut_choices[j][digit];
            parts[block].push(self.d.cut_vertices()[j]);
        }
        for p in &mut parts {
            p.sort_unstable();
        }
        BPartition { parts }
    }

    fn alpha(&self, idx: u64) -> AlphaTuple {
        let mut sizes: Vec<usize> = self.base.iter().map(Vec::len).collect();
        for (j, digit) in self.digits(idx).enumerate() {
            let (block, _) = self.cut_choices[j][digit];
            sizes[block] += 1;
        }
        AlphaTuple(sizes)
    }

    /// Per-block value tables: entry `[b][mask]` is the value of block `b`
    /// with the cut vertices selected by `mask` removed. Every partition
    /// term is then a pure table-lookup product, and each distinct
    /// (block, removed-set) pair is evaluated exactly once.
    fn tables(
        &self,
        eval: &dyn Fn(&SignedDigraph) -> Result<ExactValue>,
    ) -> Result<Vec<Vec<ExactValue>>> {
        let mut tables = Vec::with_capacity(self.d.block_count());
        for (b, block) in self.d.blocks().iter().enumerate() {
            let cuts = &self.block_cuts[b];
            let mut table = Vec::with_capacity(1 << cuts.len());
            for mask in 0u64..(1 << cuts.len()) {
                let keep: BTreeSet<u32> = block
                    .iter()
                    .copied()
                    .filter(|v| {
                        cuts.iter()
                            .position(|c| c == v)
                            .is_none_or(|pos| mask >> pos & 1 == 0)
                    })
                    .collect();
                let (part, _) = self.g.induced_subgraph(&keep)?;
                table.push(eval(&part)?);
            }
            tables.push(table);
        }
        Ok(tables)
    }

    fn term(&self, tables: &[Vec<ExactValue>], idx: u64) -> ExactValue {
        let mut masks = vec![0u64; self.d.block_count()];
        for (j, digit) in self.digits(idx).enumerate() {
            for (t, &(block, bit)) in self.cut_choices[j].iter().enumerate() {
                if t != digit {
                    masks[block] |= bit;
                }
            }
        }
        let mut prod = BigInt::one();
        for (b, &mask) in masks.iter().enumerate() {
            let factor = &tables[b][mask as usize];
            if factor.is_zero() {
                return BigInt::zero();
            }
            prod *= factor;
        }
        prod
    }

    fn sum_seq(&self, tables: &[Vec<ExactValue>]) -> ExactValue {
        let mut acc = BigInt::zero();
        for idx in 0..self.total {
            acc += self.term(tables, idx);
        }
        acc
    }

    #[cfg(feature = "parallel")]
    fn sum_par(&self, tables: &[Vec<ExactValue>]) -> ExactValue {
        use rayon::prelude::*;
        (0..self.total)
            .into_par_iter()
            .map(|idx| self.term(tables, idx))
            .reduce(BigInt::zero, |x, y| x + y)
    }

    fn sum(&self, tables: &[Vec<ExactValue>]) -> ExactValue {
        #[cfg(feature = "parallel")]
        if self.total >= 64 {
            return self.sum_par(tables);
        }
        self.sum_seq(tables)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> SignedDigraph {
        SignedDigraph::undirected(
            5,
            &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (0, 3, 1), (0, 4, 1), (3, 4, 1)],
        )
        .unwrap()
    }

    #[test]
    fn path_of_two_edges_has_two_partitions() {
        let g = SignedDigraph::undirected(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let d = block_decompose(&g).unwrap();
        let parts: Vec<BPartition> = bpartitions(&g, &d).unwrap().collect();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].parts(), &[vec![0, 1], vec![2]]);
        assert_eq!(parts[1].parts(), &[vec![0], vec![1, 2]]);
        let tuples = alpha_tuples(&g, &d).unwrap();
        assert_eq!(
            tuples,
            vec![AlphaTuple(vec![2, 1]), AlphaTuple(vec![1, 2])]
        );
    }

    #[test]
    fn bowtie_sums_to_exact_values() {
        let g = bowtie();
        let d = block_decompose(&g).unwrap();
        assert_eq!(bpartition_count(&g, &d).unwrap(), 2);
        assert_eq!(det_via_bpartitions(&g, &d).unwrap(), (-4).into());
        assert_eq!(per_via_bpartitions(&g, &d).unwrap(), 4.into());
        assert_eq!(det_exact(&g), (-4).into());
    }

    #[test]
    fn loop_off_cut_vertex_is_fine_loop_on_cut_vertex_is_not() {
        let mut arcs: Vec<(u32, u32, i64)> = Vec::new();
        for (u, v, w) in bowtie().arcs() {
            arcs.push((u, v, w));
        }
        arcs.push((3, 3, 1));
        let g = SignedDigraph::with_loops(5, &arcs).unwrap();
        let d = block_decompose(&g).unwrap();
        assert_eq!(
            det_via_bpartitions(&g, &d).unwrap(),
            det_exact(&g)
        );

        arcs.push((0, 0, 1));
        let bad = SignedDigraph::with_loops(5, &arcs).unwrap();
        let d = block_decompose(&bad).unwrap();
        assert_eq!(
            det_via_bpartitions(&bad, &d).unwrap_err(),
            Error::LoopOnCutVertex { vertex: 0 }
        );
    }

    #[test]
    fn empty_graph_sum_is_one() {
        let g = SignedDigraph::new(0, &[]).unwrap();
        let d = block_decompose(&g).unwrap();
        assert_eq!(bpartition_count(&g, &d).unwrap(), 1);
        assert_eq!(det_via_bpartitions(&g, &d).unwrap(), 1.into());
        assert_eq!(per_via_bpartitions(&g, &d).unwrap(), 1.into());
    }

    #[test]
    fn alpha_tuples_match_constraint_enumeration_on_bowtie() {
        let g = bowtie();
        let d = block_decompose(&g).unwrap();
        let mut via_assignments = alpha_tuples(&g, &d).unwrap();
        let mut via_constraints = alpha_tuples_by_constraints(&d);
        via_assignments.sort();
        via_constraints.sort();
        assert_eq!(via_assignments, via_constraints);
    }

    #[test]
    fn paw_split_identity() {
        // Triangle {1,2,3} with pendant 0 attached at 1.
        let g = SignedDigraph::undirected(
            4,
            &[(0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
        .unwrap();
        let h = BTreeSet::from([0, 1]);
        let split = split_at_cut_vertex_det(&g, &h, 1).unwrap();
        assert_eq!(split, det_exact(&g));
        assert_eq!(split, 1.into());
        let per_split = split_at_cut_vertex_per(&g, &h, 1).unwrap();
        assert_eq!(per_split, per_exact_bounded(&g, 20).unwrap());
    }

    #[test]
    fn split_rejects_partial_components() {
        let g = SignedDigraph::undirected(
            4,
            &[(0, 1, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
        .unwrap();
        // {1, 2} cuts through the component {2, 3} of g - 1.
        let err = split_at_cut_vertex_det(&g, &BTreeSet::from([1, 2]), 1).unwrap_err();
        assert!(matches!(err, Error::NotSeparable { vertex: 1, .. }));
        // Splitting at a non-cut vertex is refused.
        let err = split_at_cut_vertex_det(&g, &BTreeSet::from([2]), 2).unwrap_err();
        assert!(matches!(err, Error::NotSeparable { vertex: 2, .. }));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_sum_is_bit_identical() {
        let g = bowtie();
        let d = block_decompose(&g).unwrap();
        assert_eq!(
            det_via_bpartitions_seq(&g, &d).unwrap(),
            det_via_bpartitions_par(&g, &d).unwrap()
        );
        assert_eq!(
            per_via_bpartitions_seq(&g, &d).unwrap(),
            per_via_bpartitions_par(&g, &d).unwrap()
        );
    }
}
