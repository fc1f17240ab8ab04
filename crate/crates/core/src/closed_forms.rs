//! Closed-form determinants and permanents for the generated families.
//!
//! Everything here is O(polylog) arithmetic instead of elimination or
//! enumeration, which is what makes the cross-validation in the test suite
//! meaningful: three independent routes to the same number.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::bpartition::alpha_tuples;
use crate::error::{Error, Result};
use crate::generators::{self, FamilySpec, RootedTree};
use crate::graph::block_decompose;
use crate::ExactValue;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn neg_one(exp: usize) -> ExactValue {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Number of fixed-point-free permutations of `n` items.
pub fn derangement(n: usize) -> ExactValue {
    let mut prev = BigInt::one(); // D_0
    if n == 0 {
        return prev;
    }
    let mut cur = BigInt::zero(); // D_1
    for k in 2..=n {
        let next = (k as i64 - 1) * (&cur + &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `det(K_n) = (-1)^(n-1) (n - 1)`, with the empty graph giving `1`.
pub fn det_complete(n: usize) -> ExactValue {
    if n == 0 {
        return BigInt::one();
    }
    neg_one(n - 1) * (n as i64 - 1)
}

/// The permanent of a complete graph counts the fixed-point-free
/// permutations of its vertices.
pub fn per_complete(n: usize) -> ExactValue {
    derangement(n)
}

/// Determinant of a complete graph with `m` disjoint negative `r`-subsets
/// on `n` vertices (at least one vertex outside every subset).
pub fn det_neg_clique_complete(n: usize, m: usize, r: usize) -> Result<ExactValue> {
    generators::check_neg_clique_params(n, m, r)?;
    if m == 0 {
        return Ok(det_complete(n));
    }
    Ok(neg_one(n - 1) * neg_clique_factor(m, r, n))
}

/// The per-block factor of the multi-block formula: for a block holding
/// `a` vertices of its partition part, with `m` negative `r`-subsets. The
/// subset-free case degenerates to the plain clique factor `a - 1`.
fn neg_clique_factor(m: usize, r: usize, a: usize) -> ExactValue {
    if m == 0 {
        return BigInt::from(a as i64 - 1);
    }
    let q = 1 - 2 * r as i64; // the negative subsets enter only through this
    let lead = BigInt::from(q).pow(m as u32 - 1) * neg_one(m * r);
    let inner = a as i64 * q + 2 * r as i64 * (1 + m as i64 * (r as i64 - 1)) - 1;
    lead * inner
}

pub fn det_signed_cycle(n: usize, delta: i64) -> Result<ExactValue> {
    check_cycle(n, delta)?;
    Ok(BigInt::from(match (n % 2, n % 4) {
        (1, _) => 2 * delta,
        (_, 0) => 2 - 2 * delta,
        _ => -2 - 2 * delta,
    }))
}

pub fn per_signed_cycle(n: usize, delta: i64) -> Result<ExactValue> {
    check_cycle(n, delta)?;
    Ok(BigInt::from(if n % 2 == 1 { 2 * delta } else { 2 + 2 * delta }))
}

fn check_cycle(n: usize, delta: i64) -> Result<()> {
    if n < 3 {
        return Err(invalid("cycles need at least three vertices"));
    }
    if delta != 1 && delta != -1 {
        return Err(invalid("the cycle sign must be +1 or -1"));
    }
    Ok(())
}

/// A path matches perfectly exactly when its order is even, and each
/// matching edge contributes its weight squared, so signs cancel.
pub fn det_signed_path(n: usize) -> ExactValue {
    if n.is_multiple_of(2) {
        neg_one(n / 2)
    } else {
        BigInt::zero()
    }
}

pub fn per_signed_path(n: usize) -> ExactValue {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// A tree's only cycle covers are built from its unique perfect matching,
/// if one exists; with `+-1` edge weights every such cover has weight `1`.
pub fn det_tree(tree: &RootedTree) -> ExactValue {
    if tree.has_perfect_matching() {
        neg_one(tree.size() / 2)
    } else {
        BigInt::zero()
    }
}

pub fn per_tree(tree: &RootedTree) -> ExactValue {
    if tree.has_perfect_matching() {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Determinant of glued complete blocks: `(-1)^(n-k)` times the sum over
/// all part-size tuples of `prod_i (alpha_i - 1)`.
pub fn det_block_graph(sizes: &[usize], attach: &[u32]) -> Result<ExactValue> {
    block_graph_sum(sizes, attach, &|a| BigInt::from(a as i64 - 1), true)
}

/// Permanent of glued complete blocks: the same sum with each factor
/// replaced by the derangement count of the part size, and no sign.
pub fn per_block_graph(sizes: &[usize], attach: &[u32]) -> Result<ExactValue> {
    block_graph_sum(sizes, attach, &derangement, false)
}

fn block_graph_sum(
    sizes: &[usize],
    attach: &[u32],
    factor: &dyn Fn(usize) -> ExactValue,
    signed: bool,
) -> Result<ExactValue> {
    let spec = FamilySpec::BlockGraph {
        sizes: sizes.to_vec(),
        attach: attach.to_vec(),
    };
    let g = spec.generate()?;
    let d = block_decompose(&g)?;
    let mut sum = BigInt::zero();
    for alpha in alpha_tuples(&g, &d)? {
        let mut term = BigInt::one();
        for &a in &alpha.0 {
            term *= factor(a);
            if term.is_zero() {
                break;
            }
        }
        sum += term;
    }
    if signed && (g.n() - d.block_count()) % 2 == 1 {
        sum = -sum;
    }
    Ok(sum)
}

/// Determinant of glued negative-subset blocks, each block `i` carrying
/// its own `(n_i, m_i, r_i)`: `(-1)^(n-k)` times the sum over part-size
/// tuples of the per-block factors.
pub fn det_neg_clique_blocks(
    blocks: &[(usize, usize, usize)],
    attach: &[u32],
) -> Result<ExactValue> {
    let spec = FamilySpec::NegCliqueBlocks {
        blocks: blocks.to_vec(),
        attach: attach.to_vec(),
    };
    let g = spec.generate()?;
    let d = block_decompose(&g)?;
    let sizes: Vec<usize> = blocks.iter().map(|&(n, _, _)| n).collect();
    let (_, layout) = generators::block_graph_layout(&sizes, attach)?;
    let mut params = BTreeMap::new();
    for (verts, &(_, m, r)) in layout.iter().zip(blocks) {
        params.insert(verts.clone(), (m, r));
    }
    let block_params: Vec<(usize, usize)> = d
        .blocks()
        .iter()
        .map(|b| {
            *params
                .get(b)
                .expect("declared blocks are the biconnected components by construction")
        })
        .collect();
    let mut sum = BigInt::zero();
    for alpha in alpha_tuples(&g, &d)? {
        let mut term = BigInt::one();
        for (&a, &(m, r)) in alpha.0.iter().zip(&block_params) {
            term *= neg_clique_factor(m, r, a);
            if term.is_zero() {
                break;
            }
        }
        sum += term;
    }
    if (g.n() - d.block_count()) % 2 == 1 {
        sum = -sum;
    }
    Ok(sum)
}

/// Determinant of a cycle with one tree hanging off a cycle vertex, split
/// along the attachment: either the attachment edge is unused (cycle and
/// tree covered separately) or it sits in a matching pair (which cuts the
/// cycle open into a path and extends the tree by one vertex).
pub fn det_unicyclic_single(n: usize, delta: i64, tree: &RootedTree) -> Result<ExactValue> {
    check_cycle(n, delta)?;
    Ok(det_signed_cycle(n, delta)? * det_tree(tree)
        + det_signed_path(n - 1) * det_tree(&tree.extended_by_root()))
}

pub fn per_unicyclic_single(n: usize, delta: i64, tree: &RootedTree) -> Result<ExactValue> {
    check_cycle(n, delta)?;
    Ok(per_signed_cycle(n, delta)? * per_tree(tree)
        + per_signed_path(n - 1) * per_tree(&tree.extended_by_root()))
}

/// The same determinant resolved into its four parity cases, driven only
/// by which of the tree and the root-extended tree matches perfectly.
pub fn det_unicyclic_single_cases(
    n: usize,
    delta: i64,
    tree: &RootedTree,
) -> Result<ExactValue> {
    check_cycle(n, delta)?;
    let m = tree.size();
    let pm_tree = tree.has_perfect_matching();
    let pm_ext = tree.extended_by_root().has_perfect_matching();
    Ok(if n.is_multiple_of(2) {
        if pm_tree {
            neg_one(m / 2) * (BigInt::from(-2 * delta) + 2 * neg_one(n / 2))
        } else {
            BigInt::zero()
        }
    } else if pm_tree {
        BigInt::from(2 * delta) * neg_one(m / 2)
    } else if pm_ext {
        neg_one((m + n) / 2)
    } else {
        BigInt::zero()
    })
}

pub fn det_unicyclic_multi(n: usize, delta: i64, trees: &[RootedTree]) -> Result<ExactValue> {
    unicyclic_multi(n, delta, trees, &det_tree, &det_signed_cycle, &det_signed_path)
}

pub fn per_unicyclic_multi(n: usize, delta: i64, trees: &[RootedTree]) -> Result<ExactValue> {
    unicyclic_multi(n, delta, trees, &per_tree, &per_signed_cycle, &per_signed_path)
}

fn unicyclic_multi(
    n: usize,
    delta: i64,
    trees: &[RootedTree],
    tree_val: &dyn Fn(&RootedTree) -> ExactValue,
    cycle_val: &dyn Fn(usize, i64) -> Result<ExactValue>,
    path_val: &dyn Fn(usize) -> ExactValue,
) -> Result<ExactValue> {
    check_cycle(n, delta)?;
    if trees.is_empty() {
        return Err(invalid("at least one tree must be attached"));
    }
    let values: Vec<ExactValue> = trees.iter().map(tree_val).collect();
    let whole: ExactValue = values.iter().product();
    // At most one attachment edge can be matched, since they all share the
    // same cycle vertex; the cross sum picks which tree it reaches into.
    let mut cross = BigInt::zero();
    for (i, tree) in trees.iter().enumerate() {
        let ext = tree_val(&tree.extended_by_root());
        if ext.is_zero() {
            continue;
        }
        let others: ExactValue = values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v)
            .product();
        cross += ext * others;
    }
    Ok(cycle_val(n, delta)? * whole + path_val(n - 1) * cross)
}

pub fn det_unicyclic_two(
    n: usize,
    delta: i64,
    tree1: &RootedTree,
    tree2: &RootedTree,
    distance: usize,
) -> Result<ExactValue> {
    unicyclic_two(
        n,
        delta,
        tree1,
        tree2,
        distance,
        &TwoTreePieces {
            tree_val: &det_tree,
            single_val: &|n, d, t| det_unicyclic_single(n, d, t),
            path_val: &det_signed_path,
        },
    )
}

pub fn per_unicyclic_two(
    n: usize,
    delta: i64,
    tree1: &RootedTree,
    tree2: &RootedTree,
    distance: usize,
) -> Result<ExactValue> {
    unicyclic_two(
        n,
        delta,
        tree1,
        tree2,
        distance,
        &TwoTreePieces {
            tree_val: &per_tree,
            single_val: &|n, d, t| per_unicyclic_single(n, d, t),
            path_val: &per_signed_path,
        },
    )
}

/// The piece evaluators the two-tree formula combines, in determinant or
/// permanent flavor.
struct TwoTreePieces<'a> {
    tree_val: &'a dyn Fn(&RootedTree) -> ExactValue,
    single_val: &'a dyn Fn(usize, i64, &RootedTree) -> Result<ExactValue>,
    path_val: &'a dyn Fn(usize) -> ExactValue,
}

fn unicyclic_two(
    n: usize,
    delta: i64,
    tree1: &RootedTree,
    tree2: &RootedTree,
    distance: usize,
    pieces: &TwoTreePieces,
) -> Result<ExactValue> {
    let TwoTreePieces {
        tree_val,
        single_val,
        path_val,
    } = pieces;
    check_cycle(n, delta)?;
    if distance < 1 || 2 * distance > n {
        return Err(invalid(format!(
            "attachment distance must lie in 1..={} for an {n}-cycle",
            n / 2
        )));
    }
    // Condition on the first attachment edge: unused (tree 1 stands alone
    // next to a one-tree unicyclic graph) or matched (the cycle breaks into
    // the two arcs between the attachment points; either the second
    // attachment edge is also matched, or tree 2 stands alone).
    let ext1 = tree_val(&tree1.extended_by_root());
    let ext2 = tree_val(&tree2.extended_by_root());
    Ok(single_val(n, delta, tree2)? * tree_val(tree1)
        + &ext1 * ext2 * path_val(distance - 1) * path_val(n - distance - 1)
        + ext1 * tree_val(tree2) * path_val(n - 1))
}

/// Determinant of the mixed complete digraph: `0` for even orders,
/// `n - 2` for odd.
pub fn det_mixed_complete(n: usize) -> Result<ExactValue> {
    if n < 2 {
        return Err(invalid(
            "the mixed complete determinant formula starts at two vertices",
        ));
    }
    Ok(if n.is_multiple_of(2) {
        BigInt::zero()
    } else {
        BigInt::from(n as i64 - 2)
    })
}

/// Determinant of the mixed complete digraph with any one vertex removed
/// (vertex-transitivity makes them all equal): `(-1)^n floor((n-2)/2)`.
pub fn det_mixed_complete_minus_vertex(n: usize) -> Result<ExactValue> {
    if n < 2 {
        return Err(invalid(
            "removing a vertex needs at least two to begin with",
        ));
    }
    Ok(neg_one(n) * ((n as i64 - 2) / 2))
}

/// Determinant of mixed complete blocks glued into a star: condition on
/// which block's piece covers the shared vertex.
pub fn det_mixed_star(sizes: &[usize]) -> Result<ExactValue> {
    check_star_sizes(sizes)?;
    let mut sum = BigInt::zero();
    for i in 0..sizes.len() {
        let mut term = det_mixed_complete(sizes[i])?;
        for (j, &s) in sizes.iter().enumerate() {
            if j != i {
                term *= det_mixed_complete_minus_vertex(s)?;
            }
            if term.is_zero() {
                break;
            }
        }
        sum += term;
    }
    Ok(sum)
}

fn check_star_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(invalid("a star of blocks needs at least one block"));
    }
    if sizes.iter().any(|&s| s < 3) {
        return Err(invalid(
            "mixed blocks need at least three vertices to stay connected",
        ));
    }
    Ok(())
}

/// Spectral product form of the negative mixed complete determinant. The
/// adjacency matrix is circulant, so its determinant is a product over
/// roots of unity; conjugate eigenvalues are merged pairwise into the real
/// factors below, which is why this route goes through floating point.
pub fn det_neg_mixed_complete_float(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(invalid(
            "negative mixed complete graphs need at least three vertices",
        ));
    }
    let pairs = if n.is_multiple_of(2) { (n - 2) / 2 } else { (n - 1) / 2 };
    let mut prod = if n.is_multiple_of(2) {
        2.0 * (n as f64 - 4.0)
    } else {
        n as f64 - 4.0
    };
    for i in 1..=pairs {
        let c = (2.0 * PI * i as f64 / n as f64).cos();
        prod *= 2.0 + 8.0 * c * c + 6.0 * c;
    }
    Ok(prod)
}

/// Exact determinant of the negative mixed complete digraph with one
/// vertex removed. Expanding along the remaining structure leaves a
/// tridiagonal minor with constant bands plus a rank-one correction; the
/// bands satisfy the linear recurrence below, and the correction shows up
/// as the double sum `bracket`. The derivation passes through the rational
/// value `g_m (1 + bracket / g_m)`, which need not have an integral
/// quotient, so it is evaluated in exact rational arithmetic and checked
/// to land on an integer at the end.
pub fn det_neg_mixed_complete_minus_vertex(n: usize) -> Result<ExactValue> {
    if n < 3 {
        return Err(invalid(
            "negative mixed complete graphs need at least three vertices",
        ));
    }
    let m = n - 1;
    // g_0 = 1, g_1 = -1, g_i = -g_{i-1} - 2 g_{i-2}: leading minors of the
    // tridiagonal band (diagonal -1, one band -1, the other -2).
    let mut g: Vec<BigInt> = Vec::with_capacity(m + 1);
    g.push(BigInt::one());
    g.push(-BigInt::one());
    for i in 2..=m {
        let next = -(&g[i - 1]) - 2 * &g[i - 2];
        g.push(next);
    }
    // h runs the same recurrence from the other end: h_{m+1} = 1, h_m = -1.
    let mut h: Vec<BigInt> = vec![BigInt::zero(); m + 2];
    h[m + 1] = BigInt::one();
    h[m] = -BigInt::one();
    for i in (1..m).rev() {
        h[i] = -(&h[i + 1]) - 2 * &h[i + 2];
    }
    let mut bracket = BigInt::zero();
    for i in 1..=m {
        for j in 1..=m {
            if i <= j {
                bracket += (BigInt::one() << (j - i)) * &g[i - 1] * &h[j + 1];
            } else {
                bracket += &g[j - 1] * &h[i + 1];
            }
        }
    }
    let g_m = g[m].clone();
    assert!(
        !g_m.is_zero(),
        "the band recurrence never returns to zero: its roots have unequal moduli"
    );
    let value = BigRational::from(g_m.clone())
        * (BigRational::one() + BigRational::new(bracket, g_m));
    assert!(value.is_integer(), "a determinant of an integer matrix must be an integer");
    Ok(value.to_integer())
}

/// Star of negative mixed complete blocks, same conditioning as
/// [`det_mixed_star`] but with a floating-point leg for the whole-block
/// determinants.
pub fn det_neg_mixed_star_float(sizes: &[usize]) -> Result<f64> {
    check_star_sizes(sizes)?;
    let mut sum = 0.0;
    for i in 0..sizes.len() {
        let mut term = det_neg_mixed_complete_float(sizes[i])?;
        for (j, &s) in sizes.iter().enumerate() {
            if j != i {
                term *= det_neg_mixed_complete_minus_vertex(s)?
                    .to_f64()
                    .unwrap_or(f64::INFINITY);
            }
        }
        sum += term;
    }
    Ok(sum)
}

/// Closed-form determinant for any expressible family. The two
/// floating-point families are rounded to the nearest integer, which is
/// sound while the value stays well inside `f64`'s exact-integer range.
pub fn closed_form_det(spec: &FamilySpec) -> Result<ExactValue> {
    match spec {
        FamilySpec::Complete { n } => Ok(det_complete(*n)),
        FamilySpec::NegCliqueComplete { n, m, r } => det_neg_clique_complete(*n, *m, *r),
        FamilySpec::SignedCycle { n, delta } => det_signed_cycle(*n, *delta),
        FamilySpec::SignedPath { n } => Ok(det_signed_path(*n)),
        FamilySpec::SignedTree { tree } => Ok(det_tree(tree)),
        FamilySpec::BlockGraph { sizes, attach } => det_block_graph(sizes, attach),
        FamilySpec::NegCliqueBlocks { blocks, attach } => det_neg_clique_blocks(blocks, attach),
        FamilySpec::UnicyclicSingle { n, delta, tree } => det_unicyclic_single(*n, *delta, tree),
        FamilySpec::UnicyclicMulti { n, delta, trees } => det_unicyclic_multi(*n, *delta, trees),
        FamilySpec::UnicyclicTwo {
            n,
            delta,
            tree1,
            tree2,
            distance,
        } => det_unicyclic_two(*n, *delta, tree1, tree2, *distance),
        FamilySpec::MixedComplete { n } => det_mixed_complete(*n),
        FamilySpec::MixedStar { sizes } => det_mixed_star(sizes),
        FamilySpec::NegMixedComplete { n } => round_float(det_neg_mixed_complete_float(*n)?),
        FamilySpec::NegMixedStar { sizes } => round_float(det_neg_mixed_star_float(sizes)?),
    }
}

/// Closed-form permanent where one is known; the negative-subset and mixed
/// families have no permanent formula here.
pub fn closed_form_per(spec: &FamilySpec) -> Result<ExactValue> {
    match spec {
        FamilySpec::Complete { n } => Ok(per_complete(*n)),
        FamilySpec::SignedCycle { n, delta } => per_signed_cycle(*n, *delta),
        FamilySpec::SignedPath { n } => Ok(per_signed_path(*n)),
        FamilySpec::SignedTree { tree } => Ok(per_tree(tree)),
        FamilySpec::BlockGraph { sizes, attach } => per_block_graph(sizes, attach),
        FamilySpec::UnicyclicSingle { n, delta, tree } => per_unicyclic_single(*n, *delta, tree),
        FamilySpec::UnicyclicMulti { n, delta, trees } => per_unicyclic_multi(*n, *delta, trees),
        FamilySpec::UnicyclicTwo {
            n,
            delta,
            tree1,
            tree2,
            distance,
        } => per_unicyclic_two(*n, *delta, tree1, tree2, *distance),
        FamilySpec::NegCliqueComplete { .. }
        | FamilySpec::NegCliqueBlocks { .. }
        | FamilySpec::MixedComplete { .. }
        | FamilySpec::MixedStar { .. }
        | FamilySpec::NegMixedComplete { .. }
        | FamilySpec::NegMixedStar { .. } => Err(Error::Unsupported(
            "no closed-form permanent is known for this family".into(),
        )),
    }
}

fn round_float(x: f64) -> Result<ExactValue> {
    const EXACT_RANGE: f64 = (1u64 << 52) as f64;
    if !x.is_finite() || x.abs() > EXACT_RANGE {
        return Err(Error::Unsupported(
            "the floating-point closed form has run out of integer precision".into(),
        ));
    }
    Ok(BigInt::from(x.round() as i64))
}
