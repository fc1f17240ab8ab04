//! Graph families and reproducible random instances.
//!
//! Families are pure functions of their parameters; every random generator
//! takes an explicit seed and is deterministic across runs and platforms.
//! [`FamilySpec`] doubles as a compact text grammar (see its `FromStr`
//! impl), which the CLI uses verbatim.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{SignedDigraph, SwitchingSignature};

/// A rooted tree on `m >= 1` vertices with signed edges.
///
/// Vertex `0` is the root and vertex `i + 1` hangs below `parent[i] <= i`,
/// so every labeled rooted tree is representable and no validation can fail
/// after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<u32>,
    sign: Vec<i64>,
}

impl RootedTree {
    pub fn new(parent: Vec<u32>, sign: Vec<i64>) -> Result<RootedTree> {
        if parent.len() != sign.len() {
            return Err(invalid("parent and sign lists must have equal length"));
        }
        for (i, &p) in parent.iter().enumerate() {
            if p as usize > i {
                return Err(invalid(format!(
                    "vertex {} needs a parent among 0..={}, got {}",
                    i + 1,
                    i,
                    p
                )));
            }
        }
        if sign.iter().any(|&s| s != 1 && s != -1) {
            return Err(invalid("edge signs must be +1 or -1"));
        }
        Ok(RootedTree { parent, sign })
    }

    /// The one-vertex tree.
    pub fn single() -> RootedTree {
        RootedTree {
            parent: Vec::new(),
            sign: Vec::new(),
        }
    }

    /// A path `0 - 1 - ... - (m-1)` with all-positive edges.
    pub fn path(m: usize) -> RootedTree {
        assert!(m >= 1, "a tree has at least one vertex");
        RootedTree {
            parent: (0..m as u32 - 1).collect(),
            sign: vec![1; m - 1],
        }
    }

    /// A star with the root in the middle, all-positive edges.
    pub fn star(m: usize) -> RootedTree {
        assert!(m >= 1, "a tree has at least one vertex");
        RootedTree {
            parent: vec![0; m - 1],
            sign: vec![1; m - 1],
        }
    }

    /// A uniformly random parent array with random edge signs.
    pub fn random(rng: &mut impl Rng, m: usize) -> RootedTree {
        assert!(m >= 1, "a tree has at least one vertex");
        let parent = (0..m - 1).map(|i| rng.gen_range(0..=i) as u32).collect();
        let sign = (0..m - 1)
            .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        RootedTree { parent, sign }
    }

    pub fn size(&self) -> usize {
        self.parent.len() + 1
    }

    pub fn edges(&self) -> Vec<(u32, u32, i64)> {
        self.parent
            .iter()
            .zip(&self.sign)
            .enumerate()
            .map(|(i, (&p, &s))| (p, i as u32 + 1, s))
            .collect()
    }

    pub fn graph(&self) -> SignedDigraph {
        SignedDigraph::undirected(self.size(), &self.edges())
            .expect("a parent array always describes a simple tree")
    }

    /// Whether the tree has a (necessarily unique) perfect matching,
    /// decided by repeatedly matching a leaf to its only neighbor.
    pub fn has_perfect_matching(&self) -> bool {
        let m = self.size();
        if !m.is_multiple_of(2) {
            return false;
        }
        let mut adj = vec![Vec::new(); m];
        for (u, v, _) in self.edges() {
            adj[u as usize].push(v as usize);
            adj[v as usize].push(u as usize);
        }
        let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; m];
        let mut leaves: Vec<usize> = (0..m).filter(|&v| deg[v] == 1).collect();
        let mut matched = 0;
        while let Some(leaf) = leaves.pop() {
            if removed[leaf] {
                continue;
            }
            let Some(mate) = adj[leaf].iter().copied().find(|&u| !removed[u]) else {
                // The leaf lost its last neighbor to another pair.
                return false;
            };
            removed[leaf] = true;
            removed[mate] = true;
            matched += 2;
            for &w in &adj[mate] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
        matched == m
    }

    /// The tree with one extra vertex grafted above the old root by a
    /// positive edge. The new vertex becomes vertex `0`; old labels shift
    /// up by one.
    pub fn extended_by_root(&self) -> RootedTree {
        let mut parent = Vec::with_capacity(self.parent.len() + 1);
        let mut sign = Vec::with_capacity(self.sign.len() + 1);
        parent.push(0);
        sign.push(1);
        for (&p, &s) in self.parent.iter().zip(&self.sign) {
            parent.push(p + 1);
            sign.push(s);
        }
        RootedTree { parent, sign }
    }

    pub fn is_positive_path(&self) -> bool {
        self.parent.iter().enumerate().all(|(i, &p)| p as usize == i)
            && self.sign.iter().all(|&s| s == 1)
    }
}

/// Token form used inside family descriptors: `-` is the one-vertex tree,
/// otherwise dot-separated parent entries where a trailing `-` marks a
/// negative edge, e.g. `0.0-.1` (vertex 1 below 0, vertex 2 below 0 by a
/// negative edge, vertex 3 below 1).
impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parent.is_empty() {
            return write!(f, "-");
        }
        for (i, (&p, &s)) in self.parent.iter().zip(&self.sign).enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}{}", p, if s < 0 { "-" } else { "" })?;
        }
        Ok(())
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<RootedTree> {
        let s = s.trim();
        if s == "-" {
            return Ok(RootedTree::single());
        }
        let mut parent = Vec::new();
        let mut sign = Vec::new();
        for entry in s.split('.') {
            let (digits, sg) = match entry.strip_suffix('-') {
                Some(d) => (d, -1),
                None => (entry, 1),
            };
            parent.push(parse_num::<u32>(digits, "a parent index")?);
            sign.push(sg);
        }
        RootedTree::new(parent, sign)
    }
}

/// A parameterized graph family with a known block structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Complete graph, all edges `+1`.
    Complete { n: usize },
    /// Complete graph on `n` vertices in which the edges inside each of `m`
    /// disjoint `r`-subsets are negative. `m = 0` is a plain complete graph.
    NegCliqueComplete { n: usize, m: usize, r: usize },
    /// Cycle whose edge-sign product is `delta`; canonically all edges are
    /// `+1` except the closing edge `(n-1, 0)`.
    SignedCycle { n: usize, delta: i64 },
    /// Path on `n` vertices. Signs never affect its determinant or
    /// permanent, so the canonical instance is all-positive.
    SignedPath { n: usize },
    SignedTree { tree: RootedTree },
    /// Complete blocks glued at shared vertices. `attach[j]` is the existing
    /// global vertex that block `j + 1` is glued onto; empty means a chain,
    /// each block hanging off the previous block's last vertex.
    BlockGraph { sizes: Vec<usize>, attach: Vec<u32> },
    /// Like [`FamilySpec::BlockGraph`] but each block is a
    /// [`FamilySpec::NegCliqueComplete`] with its own `(n, m, r)`. Negative
    /// subsets are placed on the lowest-numbered non-cut vertices of each
    /// block.
    NegCliqueBlocks {
        blocks: Vec<(usize, usize, usize)>,
        attach: Vec<u32>,
    },
    /// Cycle with one tree attached at cycle vertex `0` by a positive edge.
    UnicyclicSingle {
        n: usize,
        delta: i64,
        tree: RootedTree,
    },
    /// Cycle with several trees, all attached at cycle vertex `0`.
    UnicyclicMulti {
        n: usize,
        delta: i64,
        trees: Vec<RootedTree>,
    },
    /// Cycle with `tree1` at cycle vertex `0` and `tree2` at cycle vertex
    /// `distance`, where `1 <= distance <= n/2`.
    UnicyclicTwo {
        n: usize,
        delta: i64,
        tree1: RootedTree,
        tree2: RootedTree,
        distance: usize,
    },
    /// Mixed complete digraph: every ordered pair `(u, v)` with `u != v`
    /// carries a `+1` arc except the successor arcs `u -> u+1 (mod n)`.
    MixedComplete { n: usize },
    /// Mixed complete blocks sharing the single global vertex `0`.
    MixedStar { sizes: Vec<usize> },
    /// Complete digraph with the Hamilton cycle `u -> u+1` negated and its
    /// reversal deleted: successor arcs weigh `-1`, predecessor arcs are
    /// absent, everything else weighs `+1`.
    NegMixedComplete { n: usize },
    /// Negative mixed complete blocks sharing the single global vertex `0`.
    NegMixedStar { sizes: Vec<usize> },
}

impl FamilySpec {
    /// Builds the graph, validating parameters.
    pub fn generate(&self) -> Result<SignedDigraph> {
        match self {
            FamilySpec::Complete { n } => {
                let mut edges = Vec::new();
                push_clique(&mut edges, &ids(0, *n), |_, _| 1);
                SignedDigraph::undirected(*n, &edges)
            }
            FamilySpec::NegCliqueComplete { n, m, r } => {
                check_neg_clique_params(*n, *m, *r)?;
                let chunk = chunk_of(*m, *r);
                let mut edges = Vec::new();
                push_clique(&mut edges, &ids(0, *n), |u, v| {
                    if chunk(u).is_some() && chunk(u) == chunk(v) {
                        -1
                    } else {
                        1
                    }
                });
                SignedDigraph::undirected(*n, &edges)
            }
            FamilySpec::SignedCycle { n, delta } => {
                check_cycle_params(*n, *delta)?;
                SignedDigraph::undirected(*n, &cycle_edges(*n, *delta))
            }
            FamilySpec::SignedPath { n } => {
                let edges: Vec<_> = (1..*n as u32).map(|v| (v - 1, v, 1)).collect();
                SignedDigraph::undirected(*n, &edges)
            }
            FamilySpec::SignedTree { tree } => Ok(tree.graph()),
            FamilySpec::BlockGraph { sizes, attach } => {
                let (n, blocks) = block_graph_layout(sizes, attach)?;
                let mut edges = Vec::new();
                for block in &blocks {
                    push_clique(&mut edges, block, |_, _| 1);
                }
                SignedDigraph::undirected(n, &edges)
            }
            FamilySpec::NegCliqueBlocks { blocks, attach } => {
                generate_neg_clique_blocks(blocks, attach)
            }
            FamilySpec::UnicyclicSingle { n, delta, tree } => {
                check_cycle_params(*n, *delta)?;
                let mut edges = cycle_edges(*n, *delta);
                append_tree(&mut edges, *n as u32, 0, tree);
                SignedDigraph::undirected(n + tree.size(), &edges)
            }
            FamilySpec::UnicyclicMulti { n, delta, trees } => {
                check_cycle_params(*n, *delta)?;
                if trees.is_empty() {
                    return Err(invalid("at least one tree must be attached"));
                }
                let mut edges = cycle_edges(*n, *delta);
                let mut base = *n as u32;
                for tree in trees {
                    base = append_tree(&mut edges, base, 0, tree);
                }
                SignedDigraph::undirected(base as usize, &edges)
            }
            FamilySpec::UnicyclicTwo {
                n,
                delta,
                tree1,
                tree2,
                distance,
            } => {
                check_cycle_params(*n, *delta)?;
                if *distance < 1 || 2 * distance > *n {
                    return Err(invalid(format!(
                        "attachment distance must lie in 1..={} for an {n}-cycle",
                        n / 2
                    )));
                }
                let mut edges = cycle_edges(*n, *delta);
                let base = append_tree(&mut edges, *n as u32, 0, tree1);
                let base = append_tree(&mut edges, base, *distance as u32, tree2);
                SignedDigraph::undirected(base as usize, &edges)
            }
            FamilySpec::MixedComplete { n } => {
                if *n < 1 {
                    return Err(invalid("mixed complete graphs need at least one vertex"));
                }
                let mut arcs = Vec::new();
                push_mixed_complete(&mut arcs, &ids(0, *n));
                SignedDigraph::new(*n, &arcs)
            }
            FamilySpec::MixedStar { sizes } => {
                let blocks = star_layout(sizes)?;
                let mut arcs = Vec::new();
                for block in &blocks {
                    push_mixed_complete(&mut arcs, block);
                }
                let n = sizes.iter().sum::<usize>() - (sizes.len() - 1);
                SignedDigraph::new(n, &arcs)
            }
            FamilySpec::NegMixedComplete { n } => {
                if *n < 3 {
                    return Err(invalid(
                        "negative mixed complete graphs need at least three vertices",
                    ));
                }
                let mut arcs = Vec::new();
                push_neg_mixed_complete(&mut arcs, &ids(0, *n));
                SignedDigraph::new(*n, &arcs)
            }
            FamilySpec::NegMixedStar { sizes } => {
                let blocks = star_layout(sizes)?;
                let mut arcs = Vec::new();
                for block in &blocks {
                    push_neg_mixed_complete(&mut arcs, block);
                }
                let n = sizes.iter().sum::<usize>() - (sizes.len() - 1);
                SignedDigraph::new(n, &arcs)
            }
        }
    }
}

fn ids(from: u32, count: usize) -> Vec<u32> {
    (from..from + count as u32).collect()
}

fn push_clique(
    edges: &mut Vec<(u32, u32, i64)>,
    verts: &[u32],
    weight: impl Fn(usize, usize) -> i64,
) {
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            edges.push((verts[i], verts[j], weight(i, j)));
        }
    }
}

/// Maps a local vertex index to the negative subset containing it, if any;
/// the subsets occupy local indices `0..m*r` in consecutive chunks.
fn chunk_of(m: usize, r: usize) -> impl Fn(usize) -> Option<usize> {
    move |i| if m > 0 && i < m * r { Some(i / r) } else { None }
}

pub(crate) fn check_neg_clique_params(n: usize, m: usize, r: usize) -> Result<()> {
    if m == 0 {
        return Ok(());
    }
    if r < 2 {
        return Err(invalid("negative subsets need at least two vertices"));
    }
    if m * r + 1 > n {
        return Err(invalid(format!(
            "{m} negative {r}-subsets need {} vertices, but only {n} are available \
             and one must stay outside",
            m * r + 1
        )));
    }
    Ok(())
}

fn check_cycle_params(n: usize, delta: i64) -> Result<()> {
    if n < 3 {
        return Err(invalid("cycles need at least three vertices"));
    }
    if delta != 1 && delta != -1 {
        return Err(invalid("the cycle sign must be +1 or -1"));
    }
    Ok(())
}

fn cycle_edges(n: usize, delta: i64) -> Vec<(u32, u32, i64)> {
    let mut edges: Vec<(u32, u32, i64)> = (1..n as u32).map(|v| (v - 1, v, 1)).collect();
    edges.push((n as u32 - 1, 0, delta));
    edges
}

/// Appends `tree` to the edge list, attaching its root to `attach_at` by a
/// positive edge; tree vertices occupy labels `base..`. Returns the next
/// free label.
fn append_tree(edges: &mut Vec<(u32, u32, i64)>, base: u32, attach_at: u32, tree: &RootedTree) -> u32 {
    edges.push((attach_at, base, 1));
    for (u, v, s) in tree.edges() {
        edges.push((base + u, base + v, s));
    }
    base + tree.size() as u32
}

fn push_mixed_complete(arcs: &mut Vec<(u32, u32, i64)>, verts: &[u32]) {
    let n = verts.len();
    for i in 0..n {
        for j in 0..n {
            if i == j || j == (i + 1) % n {
                continue;
            }
            arcs.push((verts[i], verts[j], 1));
        }
    }
}

fn push_neg_mixed_complete(arcs: &mut Vec<(u32, u32, i64)>, verts: &[u32]) {
    let n = verts.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if j == (i + 1) % n {
                arcs.push((verts[i], verts[j], -1));
            } else if i != (j + 1) % n {
                arcs.push((verts[i], verts[j], 1));
            }
        }
    }
}

/// Vertex lists of blocks glued into a star at global vertex `0`; block `i`
/// contributes `sizes[i] - 1` fresh vertices.
fn star_layout(sizes: &[usize]) -> Result<Vec<Vec<u32>>> {
    if sizes.is_empty() {
        return Err(invalid("a star of blocks needs at least one block"));
    }
    if sizes.iter().any(|&s| s < 3) {
        return Err(invalid(
            "mixed blocks need at least three vertices to stay connected",
        ));
    }
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut next = 1u32;
    for &s in sizes {
        let mut verts = vec![0u32];
        verts.extend(next..next + s as u32 - 1);
        next += s as u32 - 1;
        blocks.push(verts);
    }
    Ok(blocks)
}

/// Global vertex lists of complete blocks glued per `attach`; shared with
/// the closed-form evaluators so both sides agree on which global vertices
/// each declared block occupies.
pub(crate) fn block_graph_layout(
    sizes: &[usize],
    attach: &[u32],
) -> Result<(usize, Vec<Vec<u32>>)> {
    if sizes.is_empty() {
        return Err(invalid("at least one block is required"));
    }
    if sizes.len() == 1 {
        if sizes[0] == 0 {
            return Err(invalid("a block needs at least one vertex"));
        }
    } else if sizes.iter().any(|&s| s < 2) {
        return Err(invalid(
            "every block of a multi-block graph needs at least two vertices",
        ));
    }
    if !attach.is_empty() && attach.len() != sizes.len() - 1 {
        return Err(invalid(format!(
            "{} blocks need {} attachment points, got {}",
            sizes.len(),
            sizes.len() - 1,
            attach.len()
        )));
    }
    let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(sizes.len());
    let mut count = 0u32;
    for (j, &s) in sizes.iter().enumerate() {
        if j == 0 {
            blocks.push(ids(0, s));
            count = s as u32;
            continue;
        }
        let a = if attach.is_empty() {
            count - 1
        } else {
            attach[j - 1]
        };
        if a >= count {
            return Err(invalid(format!(
                "block {j} attaches at vertex {a}, but only vertices 0..{count} exist at that point"
            )));
        }
        let mut verts = vec![a];
        verts.extend(count..count + s as u32 - 1);
        count += s as u32 - 1;
        blocks.push(verts);
    }
    Ok((count as usize, blocks))
}

fn generate_neg_clique_blocks(
    specs: &[(usize, usize, usize)],
    attach: &[u32],
) -> Result<SignedDigraph> {
    let sizes: Vec<usize> = specs.iter().map(|&(n, _, _)| n).collect();
    let (n, blocks) = block_graph_layout(&sizes, attach)?;
    for &(bn, bm, br) in specs {
        check_neg_clique_params(bn, bm, br)?;
    }
    let mut membership = vec![0usize; n];
    for block in &blocks {
        for &v in block {
            membership[v as usize] += 1;
        }
    }
    let mut edges = Vec::new();
    for (block, &(_, bm, br)) in blocks.iter().zip(specs) {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        let eligible: Vec<u32> = sorted
            .iter()
            .copied()
            .filter(|&v| membership[v as usize] == 1)
            .collect();
        let need = bm * br;
        if eligible.len() < need {
            let culprit = sorted
                .iter()
                .copied()
                .find(|&v| membership[v as usize] > 1)
                .expect("a block can only lack room because of shared vertices");
            return Err(Error::CutVertexInNegativeClique { vertex: culprit });
        }
        let chunk_id = |v: u32| -> Option<usize> {
            eligible[..need].iter().position(|&x| x == v).map(|i| i / br)
        };
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                let (u, v) = (block[i], block[j]);
                let w = match (chunk_id(u), chunk_id(v)) {
                    (Some(a), Some(b)) if a == b => -1,
                    _ => 1,
                };
                edges.push((u, v, w));
            }
        }
    }
    SignedDigraph::undirected(n, &edges)
}

// ── descriptor grammar ──────────────────────────────────────────────────────

/// Parses descriptors of the form `name:args`:
///
/// ```text
/// complete:6                        neg-clique:7,2,2
/// cycle:8,-1                        path:5
/// tree:0.0-.1                       block-graph:3,4,2@0,2
/// neg-clique-blocks:5.1.2,4@0       unicyclic:6,+1,3
/// unicyclic-multi:5,-1,2+2          unicyclic-two:6,1,2,3,2
/// mixed-complete:5                  mixed-star:5,4
/// neg-mixed-complete:6              neg-mixed-star:5,6
/// ```
///
/// Cycle signs are `+1`/`1`/`-1`. Tree arguments of the unicyclic families
/// are either an integer (an all-positive path with that many vertices) or
/// `p` followed by the parent-list form, e.g. `p0.0-.1`. Block lists of
/// `neg-clique-blocks` are `n.m.r` triples, with a bare `n` standing for
/// `n.0.0`; the optional `@a,b,...` suffix lists attachment vertices, one
/// per block after the first, defaulting to a chain.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("family descriptors look like name:args, got {s:?}")))?;
        match name {
            "complete" => Ok(FamilySpec::Complete {
                n: parse_num(rest, "a vertex count")?,
            }),
            "neg-clique" => {
                let [n, m, r] = fixed_ints::<3>(rest)?;
                Ok(FamilySpec::NegCliqueComplete { n, m, r })
            }
            "cycle" => {
                let (n, delta) = rest
                    .split_once(',')
                    .ok_or_else(|| invalid("cycle takes n,delta"))?;
                Ok(FamilySpec::SignedCycle {
                    n: parse_num(n, "a vertex count")?,
                    delta: parse_delta(delta)?,
                })
            }
            "path" => Ok(FamilySpec::SignedPath {
                n: parse_num(rest, "a vertex count")?,
            }),
            "tree" => Ok(FamilySpec::SignedTree { tree: rest.parse()? }),
            "block-graph" => {
                let (sizes, attach) = split_attach(rest)?;
                Ok(FamilySpec::BlockGraph {
                    sizes: parse_list(sizes, ',', "a block size")?,
                    attach,
                })
            }
            "neg-clique-blocks" => {
                let (body, attach) = split_attach(rest)?;
                let mut blocks = Vec::new();
                for item in body.split(',') {
                    let fields: Vec<&str> = item.split('.').collect();
                    blocks.push(match fields.as_slice() {
                        [n] => (parse_num(n, "a block size")?, 0, 0),
                        [n, m, r] => (
                            parse_num(n, "a block size")?,
                            parse_num(m, "a subset count")?,
                            parse_num(r, "a subset size")?,
                        ),
                        _ => return Err(invalid(format!("expected n or n.m.r, got {item:?}"))),
                    });
                }
                Ok(FamilySpec::NegCliqueBlocks { blocks, attach })
            }
            "unicyclic" => {
                let [n, delta, tree] = fixed_fields::<3>(rest)?;
                Ok(FamilySpec::UnicyclicSingle {
                    n: parse_num(n, "a cycle length")?,
                    delta: parse_delta(delta)?,
                    tree: parse_tree_token(tree)?,
                })
            }
            "unicyclic-multi" => {
                let [n, delta, trees] = fixed_fields::<3>(rest)?;
                Ok(FamilySpec::UnicyclicMulti {
                    n: parse_num(n, "a cycle length")?,
                    delta: parse_delta(delta)?,
                    trees: trees
                        .split('+')
                        .map(parse_tree_token)
                        .collect::<Result<_>>()?,
                })
            }
            "unicyclic-two" => {
                let [n, delta, t1, t2, l] = fixed_fields::<5>(rest)?;
                Ok(FamilySpec::UnicyclicTwo {
                    n: parse_num(n, "a cycle length")?,
                    delta: parse_delta(delta)?,
                    tree1: parse_tree_token(t1)?,
                    tree2: parse_tree_token(t2)?,
                    distance: parse_num(l, "an attachment distance")?,
                })
            }
            "mixed-complete" => Ok(FamilySpec::MixedComplete {
                n: parse_num(rest, "a vertex count")?,
            }),
            "mixed-star" => Ok(FamilySpec::MixedStar {
                sizes: parse_list(rest, ',', "a block size")?,
            }),
            "neg-mixed-complete" => Ok(FamilySpec::NegMixedComplete {
                n: parse_num(rest, "a vertex count")?,
            }),
            "neg-mixed-star" => Ok(FamilySpec::NegMixedStar {
                sizes: parse_list(rest, ',', "a block size")?,
            }),
            other => Err(invalid(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::NegCliqueComplete { n, m, r } => write!(f, "neg-clique:{n},{m},{r}"),
            FamilySpec::SignedCycle { n, delta } => write!(f, "cycle:{n},{delta:+}"),
            FamilySpec::SignedPath { n } => write!(f, "path:{n}"),
            FamilySpec::SignedTree { tree } => write!(f, "tree:{tree}"),
            FamilySpec::BlockGraph { sizes, attach } => {
                write!(f, "block-graph:{}", join(sizes, ","))?;
                write_attach(f, attach)
            }
            FamilySpec::NegCliqueBlocks { blocks, attach } => {
                write!(f, "neg-clique-blocks:")?;
                for (i, (n, m, r)) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    if *m == 0 {
                        write!(f, "{n}")?;
                    } else {
                        write!(f, "{n}.{m}.{r}")?;
                    }
                }
                write_attach(f, attach)
            }
            FamilySpec::UnicyclicSingle { n, delta, tree } => {
                write!(f, "unicyclic:{n},{delta:+},{}", tree_token(tree))
            }
            FamilySpec::UnicyclicMulti { n, delta, trees } => {
                let tokens: Vec<String> = trees.iter().map(tree_token).collect();
                write!(f, "unicyclic-multi:{n},{delta:+},{}", tokens.join("+"))
            }
            FamilySpec::UnicyclicTwo {
                n,
                delta,
                tree1,
                tree2,
                distance,
            } => write!(
                f,
                "unicyclic-two:{n},{delta:+},{},{},{distance}",
                tree_token(tree1),
                tree_token(tree2)
            ),
            FamilySpec::MixedComplete { n } => write!(f, "mixed-complete:{n}"),
            FamilySpec::MixedStar { sizes } => write!(f, "mixed-star:{}", join(sizes, ",")),
            FamilySpec::NegMixedComplete { n } => write!(f, "neg-mixed-complete:{n}"),
            FamilySpec::NegMixedStar { sizes } => {
                write!(f, "neg-mixed-star:{}", join(sizes, ","))
            }
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| invalid(format!("expected {what}, got {s:?}")))
}

fn parse_list<T: FromStr>(s: &str, sep: char, what: &str) -> Result<Vec<T>> {
    s.split(sep).map(|item| parse_num(item, what)).collect()
}

fn fixed_ints<const K: usize>(s: &str) -> Result<[usize; K]> {
    let fields = fixed_fields::<K>(s)?;
    let mut out = [0usize; K];
    for (slot, field) in out.iter_mut().zip(fields) {
        *slot = parse_num(field, "an integer")?;
    }
    Ok(out)
}

fn fixed_fields<const K: usize>(s: &str) -> Result<[&str; K]> {
    let fields: Vec<&str> = s.split(',').collect();
    fields.try_into().map_err(|fields: Vec<&str>| {
        invalid(format!("expected {K} comma-separated fields, got {}", fields.len()))
    })
}

fn parse_delta(s: &str) -> Result<i64> {
    match s.trim() {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(invalid(format!("expected +1 or -1, got {other:?}"))),
    }
}

fn parse_tree_token(s: &str) -> Result<RootedTree> {
    if let Some(parents) = s.strip_prefix('p') {
        parents.parse()
    } else {
        let m: usize = parse_num(s, "a tree size or p-prefixed parent list")?;
        if m == 0 {
            return Err(invalid("a tree has at least one vertex"));
        }
        Ok(RootedTree::path(m))
    }
}

fn tree_token(t: &RootedTree) -> String {
    if t.is_positive_path() {
        t.size().to_string()
    } else {
        format!("p{t}")
    }
}

fn split_attach(s: &str) -> Result<(&str, Vec<u32>)> {
    match s.split_once('@') {
        None => Ok((s, Vec::new())),
        Some((body, attach)) => Ok((body, parse_list(attach, ',', "an attachment vertex")?)),
    }
}

fn join(xs: &[usize], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn write_attach(f: &mut fmt::Formatter<'_>, attach: &[u32]) -> fmt::Result {
    if attach.is_empty() {
        return Ok(());
    }
    let items: Vec<String> = attach.iter().map(|a| a.to_string()).collect();
    write!(f, "@{}", items.join(","))
}

// ── seeded random instances ─────────────────────────────────────────────────

/// A digraph where each ordered pair carries an arc with probability
/// `density`, weighted by a uniform draw from `weights`; loops appear with
/// half that probability when enabled.
pub fn gen_random_digraph(
    seed: u64,
    n: usize,
    density: f64,
    weights: &[i64],
    loops: bool,
) -> SignedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    let mut arcs = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u == v {
                if loops && rng.gen_bool(density / 2.0) {
                    arcs.push((u, v, pick(&mut rng, weights)));
                }
            } else if rng.gen_bool(density) {
                arcs.push((u, v, pick(&mut rng, weights)));
            }
        }
    }
    SignedDigraph::with_loops(n, &arcs).expect("generated arcs are in range and distinct")
}

/// An undirected signed graph where each unordered pair carries an edge
/// with probability `density`.
pub fn gen_random_graph(seed: u64, n: usize, density: f64, weights: &[i64]) -> SignedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(density) {
                edges.push((u, v, pick(&mut rng, weights)));
            }
        }
    }
    SignedDigraph::undirected(n, &edges).expect("generated edges are in range and distinct")
}

/// A connected graph grown block by block — edges, cliques, and cycles of
/// up to five vertices glued at random existing vertices — with at most
/// `max_n` vertices. Exercises the whole cut-vertex machinery.
pub fn gen_random_block_graph(seed: u64, max_n: usize, weights: &[i64]) -> SignedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = rng.gen_range(1..=max_n.max(1));
    if target == 1 {
        return SignedDigraph::new(1, &[]).expect("a single vertex is always valid");
    }
    let mut edges: Vec<(u32, u32, i64)> = Vec::new();
    let mut count: u32 = 0;
    while (count as usize) < target {
        let room = target - count as usize + usize::from(count > 0);
        let s = rng.gen_range(2..=room.min(5));
        let verts: Vec<u32> = if count == 0 {
            count = s as u32;
            (0..count).collect()
        } else {
            let a = rng.gen_range(0..count);
            let mut vs = vec![a];
            vs.extend(count..count + s as u32 - 1);
            count += s as u32 - 1;
            vs
        };
        if s == 2 {
            edges.push((verts[0], verts[1], pick(&mut rng, weights)));
        } else if rng.gen_bool(0.5) {
            for i in 0..s {
                edges.push((verts[i], verts[(i + 1) % s], pick(&mut rng, weights)));
            }
        } else {
            for i in 0..s {
                for j in i + 1..s {
                    edges.push((verts[i], verts[j], pick(&mut rng, weights)));
                }
            }
        }
    }
    SignedDigraph::undirected(count as usize, &edges)
        .expect("blocks share only their attachment vertex")
}

pub fn gen_random_signed_tree(seed: u64, m: usize) -> RootedTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RootedTree::random(&mut rng, m)
}

/// A uniformly random switching signature on `n` vertices.
pub fn gen_random_signature(seed: u64, n: usize) -> SwitchingSignature {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    SwitchingSignature::new(signs).expect("signs are always +1 or -1")
}

fn pick(rng: &mut impl Rng, weights: &[i64]) -> i64 {
    assert!(!weights.is_empty(), "a weight palette cannot be empty");
    weights[rng.gen_range(0..weights.len())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::block_decompose;

    #[test]
    fn mixed_complete_matches_its_matrix_definition() {
        // All-ones minus identity minus the successor permutation.
        let n = 5;
        let g = FamilySpec::MixedComplete { n }.generate().unwrap();
        let a = g.adjacency_matrix();
        for (u, row) in a.iter().enumerate() {
            for (v, &w) in row.iter().enumerate() {
                let expected = if u == v || v == (u + 1) % n { 0 } else { 1 };
                assert_eq!(w, expected, "entry ({u}, {v})");
            }
        }
    }

    #[test]
    fn neg_mixed_complete_arc_census() {
        let n = 6;
        let g = FamilySpec::NegMixedComplete { n }.generate().unwrap();
        let minus: Vec<_> = g.arcs().filter(|&(_, _, w)| w == -1).collect();
        assert_eq!(minus.len(), n);
        for u in 0..n as u32 {
            let succ = (u + 1) % n as u32;
            assert_eq!(g.weight(u, succ), Some(-1));
            assert_eq!(g.weight(succ, u), None);
        }
        let plus = g.arcs().filter(|&(_, _, w)| w == 1).count();
        assert_eq!(plus, n * (n - 3));
    }

    #[test]
    fn neg_clique_chunks_sit_on_low_vertices() {
        let g = FamilySpec::NegCliqueComplete { n: 7, m: 2, r: 2 }
            .generate()
            .unwrap();
        assert_eq!(g.weight(0, 1), Some(-1));
        assert_eq!(g.weight(2, 3), Some(-1));
        assert_eq!(g.weight(1, 2), Some(1));
        assert_eq!(g.weight(5, 6), Some(1));
        assert_eq!(g.arcs().filter(|&(_, _, w)| w == -1).count(), 4);
    }

    #[test]
    fn chain_layout_shares_the_last_vertex() {
        let (n, blocks) = block_graph_layout(&[3, 4, 2], &[]).unwrap();
        assert_eq!(n, 7);
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![2, 3, 4, 5], vec![5, 6]]);

        let (n, blocks) = block_graph_layout(&[3, 3, 3], &[0, 0]).unwrap();
        assert_eq!(n, 7);
        assert_eq!(blocks[1][0], 0);
        assert_eq!(blocks[2][0], 0);
    }

    #[test]
    fn negative_subsets_avoid_shared_vertices() {
        let spec = FamilySpec::NegCliqueBlocks {
            blocks: vec![(4, 1, 2), (3, 0, 0)],
            attach: vec![],
        };
        let g = spec.generate().unwrap();
        // Block {0,1,2,3} shares vertex 3 with the next block, so the
        // negative pair lands on {0,1}.
        assert_eq!(g.weight(0, 1), Some(-1));
        for v in 0..6u32 {
            if v != 3 {
                let w = g.weight(3, v).or(g.weight(v, 3));
                assert!(w.is_none() || w == Some(1));
            }
        }
    }

    #[test]
    fn oversubscribed_block_reports_the_shared_vertex() {
        // The middle block of the chain has both endpoints shared, leaving
        // one free vertex for a subset that needs two.
        let spec = FamilySpec::NegCliqueBlocks {
            blocks: vec![(2, 0, 0), (3, 1, 2), (2, 0, 0)],
            attach: vec![],
        };
        assert!(matches!(
            spec.generate().unwrap_err(),
            Error::CutVertexInNegativeClique { vertex: 1 }
        ));
    }

    #[test]
    fn unicyclic_two_attaches_at_the_right_cycle_vertices() {
        let spec = FamilySpec::UnicyclicTwo {
            n: 6,
            delta: -1,
            tree1: RootedTree::single(),
            tree2: RootedTree::path(2),
            distance: 2,
        };
        let g = spec.generate().unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.weight(0, 6), Some(1));
        assert_eq!(g.weight(2, 7), Some(1));
        assert_eq!(g.weight(7, 8), Some(1));
        assert_eq!(g.weight(5, 0), Some(-1));
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilySpec::SignedCycle { n: 2, delta: 1 }.generate().is_err());
        assert!(FamilySpec::SignedCycle { n: 4, delta: 2 }.generate().is_err());
        assert!(FamilySpec::NegCliqueComplete { n: 4, m: 1, r: 4 }
            .generate()
            .is_err());
        assert!(FamilySpec::MixedStar { sizes: vec![4, 2] }.generate().is_err());
        assert!(FamilySpec::UnicyclicTwo {
            n: 6,
            delta: 1,
            tree1: RootedTree::single(),
            tree2: RootedTree::single(),
            distance: 4,
        }
        .generate()
        .is_err());
        assert!(block_graph_layout(&[3, 2], &[7]).is_err());
        assert!(block_graph_layout(&[3, 1], &[]).is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        let specs = [
            "complete:6",
            "neg-clique:7,2,2",
            "cycle:8,-1",
            "cycle:5,+1",
            "path:5",
            "tree:0.0-.1",
            "block-graph:3,4,2",
            "block-graph:3,3,3@0,0",
            "neg-clique-blocks:5.1.2,4@0",
            "unicyclic:6,+1,3",
            "unicyclic:6,-1,p0.0-",
            "unicyclic-multi:5,-1,2+2",
            "unicyclic-two:6,+1,2,3,2",
            "mixed-complete:5",
            "mixed-star:5,4",
            "neg-mixed-complete:6",
            "neg-mixed-star:5,6",
        ];
        for s in specs {
            let spec: FamilySpec = s.parse().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(spec.to_string(), s, "round trip of {s}");
            let again: FamilySpec = spec.to_string().parse().unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn bad_descriptors_are_rejected() {
        for s in [
            "complete",
            "complete:x",
            "cycle:6",
            "cycle:6,0",
            "unicyclic:6,+1",
            "unicyclic:6,+1,p1",
            "nonsense:3",
        ] {
            assert!(s.parse::<FamilySpec>().is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn tree_helpers() {
        assert!(RootedTree::path(4).has_perfect_matching());
        assert!(!RootedTree::path(3).has_perfect_matching());
        assert!(!RootedTree::star(4).has_perfect_matching());
        assert!(RootedTree::path(2).has_perfect_matching());
        assert!(!RootedTree::single().has_perfect_matching());
        assert_eq!(
            RootedTree::path(3).extended_by_root(),
            RootedTree::path(4)
        );
        assert!(RootedTree::path(1).is_positive_path());
        assert!(!RootedTree::star(4).is_positive_path());
        let t = RootedTree::new(vec![0, 0, 1], vec![1, -1, 1]).unwrap();
        assert_eq!(t.to_string(), "0.0-.1");
        assert_eq!("0.0-.1".parse::<RootedTree>().unwrap(), t);
        assert!("2.0".parse::<RootedTree>().is_err());
    }

    #[test]
    fn random_generators_are_deterministic_and_sound() {
        let a = gen_random_block_graph(7, 12, &[1, -1]);
        let b = gen_random_block_graph(7, 12, &[1, -1]);
        assert_eq!(a, b);
        for seed in 0..40 {
            let g = gen_random_block_graph(seed, 12, &[1, -1, 2]);
            assert!(g.is_connected(), "seed {seed}");
            assert!(block_decompose(&g).is_ok(), "seed {seed}");
        }
        let d = gen_random_digraph(3, 6, 0.5, &[1, -1], true);
        assert_eq!(d, gen_random_digraph(3, 6, 0.5, &[1, -1], true));
        let u = gen_random_graph(4, 6, 0.6, &[1, -1]);
        assert!(u.is_symmetric());
        let sig = gen_random_signature(5, 8);
        assert_eq!(sig.len(), 8);
    }
}
