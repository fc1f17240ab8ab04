//! Block (biconnected component) and cut-vertex decomposition of the
//! undirected support of a digraph.


use crate::error::{Error, Result};
use crate::graph::SignedDigraph;

/// The blocks of a connected graph, its cut vertices, and which blocks each
/// cut vertex belongs to.
///
/// Blocks are maximal subgraphs without a cut vertex of their own: maximal
/// 2-connected pieces, bridges (two-vertex blocks), or a single vertex when
/// the whole graph is one. Every vertex lies in at least one block; a vertex
/// is a cut vertex exactly when it lies in two or more. Blocks are listed in
/// lexicographic order of their sorted vertex sets, so the decomposition of
/// a given graph is always identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    n: usize,
    blocks: Vec<Vec<u32>>,
    vertex_blocks: Vec<Vec<usize>>,
    cut_vertices: Vec<u32>,
}

impl BlockDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Sorted vertex sets of the blocks.
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[u32] {
        &self.blocks[i]
    }

    /// Cut vertices in ascending order.
    pub fn cut_vertices(&self) -> &[u32] {
        &self.cut_vertices
    }

    pub fn is_cut_vertex(&self, v: u32) -> bool {
        self.vertex_blocks
            .get(v as usize)
            .is_some_and(|b| b.len() >= 2)
    }

    /// Indices of the blocks containing `v` (one for a non-cut vertex).
    pub fn blocks_containing(&self, v: u32) -> &[usize] {
        &self.vertex_blocks[v as usize]
    }

    /// Vertex count of the union of the given blocks.
    pub fn union_size(&self, block_set: &[usize]) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for &i in block_set {
            for &v in &self.blocks[i] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                }
            }
        }
        count
    }
}

/// Decomposes a connected graph into blocks and cut vertices.
///
/// Directions and signs play no role here: the decomposition is that of the
/// undirected support. Disconnected input is an error; the empty graph
/// yields an empty decomposition.
pub fn block_decompose(g: &SignedDigraph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut blocks: Vec<Vec<u32>> = Vec::new();

    if n == 1 {
        // A single vertex has no edges to hang a DFS on but is its own block.
        blocks.push(vec![0]);
    } else if n > 1 {
        let nb: Vec<Vec<u32>> = g
            .support_neighbors()
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let mut state = Dfs {
            nb: &nb,
            disc: vec![UNSET; n],
            low: vec![UNSET; n],
            timer: 0,
            edge_stack: Vec::new(),
            blocks: &mut blocks,
        };
        state.run(0, UNSET);
    }

    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();

    let mut vertex_blocks = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            vertex_blocks[v as usize].push(i);
        }
    }
    let cut_vertices = (0..n as u32)
        .filter(|&v| vertex_blocks[v as usize].len() >= 2)
        .collect();

    Ok(BlockDecomposition {
        n,
        blocks,
        vertex_blocks,
        cut_vertices,
    })
}

const UNSET: u32 = u32::MAX;

struct Dfs<'a> {
    nb: &'a [Vec<u32>],
    disc: Vec<u32>,
    low: Vec<u32>,
    timer: u32,
    edge_stack: Vec<(u32, u32)>,
    blocks: &'a mut Vec<Vec<u32>>,
}

impl Dfs<'_> {
    fn run(&mut self, u: u32, parent: u32) {
        self.disc[u as usize] = self.timer;
        self.low[u as usize] = self.timer;
        self.timer += 1;
        for i in 0..self.nb[u as usize].len() {
            let v = self.nb[u as usize][i];
            if v == parent {
                continue;
            }
            if self.disc[v as usize] == UNSET {
                self.edge_stack.push((u, v));
                self.run(v, u);
                self.low[u as usize] = self.low[u as usize].min(self.low[v as usize]);
                if self.low[v as usize] >= self.disc[u as usize] {
                    // u separates v's subtree: everything stacked since
                    // (u, v) is one block.
                    let mut verts = Vec::new();
                    loop {
                        let (a, b) = self.edge_stack.pop().expect("edge stack underflow");
                        verts.push(a);
                        verts.push(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    verts.sort_unstable();
                    verts.dedup();
                    self.blocks.push(verts);
                }
            } else if self.disc[v as usize] < self.disc[u as usize] {
                self.edge_stack.push((u, v));
                self.low[u as usize] = self.low[u as usize].min(self.disc[v as usize]);
            }
        }
    }
}
