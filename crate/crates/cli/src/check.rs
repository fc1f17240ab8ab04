//! The `check` subcommand: every evaluation route against every other, at a
//! scale the flags control. Each suite stops at its first disagreement and
//! reports the smallest reproducing input it saw.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use blockdet::bpartition::{
    alpha_tuples, alpha_tuples_by_constraints, bpartition_count, det_via_bpartitions,
    per_via_bpartitions,
};
use blockdet::closed_forms as forms;
use blockdet::exact::{det_exact, det_via_cycle_covers, per_exact, per_via_cycle_covers};
use blockdet::generators::{
    gen_random_block_graph, gen_random_digraph, gen_random_graph, gen_random_signature,
    gen_random_signed_tree, FamilySpec,
};
use blockdet::{block_decompose, is_balanced, Balance, SignedDigraph};

use crate::Failure;

/// Tolerance for the families whose determinant formula is a floating-point
/// spectral product.
pub const FLOAT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    /// Random cases per suite; exhaustive sweeps ignore it.
    pub cases: usize,
    /// Ceiling on graph order for random cases; sweeps clamp to their own
    /// oracle limits below it.
    pub max_n: usize,
    pub seed: u64,
    /// Mis-sign the clique-tree determinant formula to prove failures are
    /// detected and reported.
    pub inject_fault: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            cases: 300,
            max_n: 10,
            seed: 42,
            inject_fault: false,
        }
    }
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "oracle-triangle",
    "bpartition-oracle",
    "alpha-census",
    "block-graph-formulas",
    "neg-clique-formulas",
    "unicyclic-formulas",
    "mixed-formulas",
    "neg-mixed-formulas",
    "balance-invariance",
    "cycle-permanent-parity",
];

/// Run one suite by name, or all of them. Unknown names are input errors.
pub fn run(filter: Option<&str>, cfg: &CheckConfig) -> Result<Vec<SuiteOutcome>, Failure> {
    if let Some(name) = filter {
        if !SUITE_NAMES.contains(&name) {
            return Err(Failure::Input(format!(
                "unknown suite '{name}'; one of: {}",
                SUITE_NAMES.join(", ")
            )));
        }
    }
    Ok(SUITE_NAMES
        .iter()
        .filter(|n| filter.is_none_or(|f| f == **n))
        .map(|name| run_suite(name, cfg))
        .collect())
}

fn run_suite(name: &'static str, cfg: &CheckConfig) -> SuiteOutcome {
    let (cases, failure) = match name {
        "oracle-triangle" => oracle_triangle(cfg),
        "bpartition-oracle" => bpartition_oracle(cfg),
        "alpha-census" => alpha_census(cfg),
        "block-graph-formulas" => block_graph_formulas(cfg),
        "neg-clique-formulas" => neg_clique_formulas(cfg),
        "unicyclic-formulas" => unicyclic_formulas(cfg),
        "mixed-formulas" => mixed_formulas(cfg),
        "neg-mixed-formulas" => neg_mixed_formulas(cfg),
        "balance-invariance" => balance_invariance(cfg),
        "cycle-permanent-parity" => cycle_permanent_parity(cfg),
        _ => unreachable!("suite names are fixed"),
    };
    SuiteOutcome {
        name,
        cases,
        failure,
    }
}

type SuiteBody = (usize,
    Option<String>);

/// Cover census against both dense oracles on small random graphs, directed
/// and undirected, loops included.
fn oracle_triangle(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(1, 8);
    for i in 0..cfg.cases {
        let seed = cfg.seed.wrapping_add(i as u64);
        let n = 1 + i % top;
        let g = if i % 2 == 0 {
            gen_random_digraph(seed, n, 0.45, &[1, -1], true)
        } else {
            gen_random_graph(seed, n, 0.5, &[1, -1])
        };
        let label = format!("random graph (seed {seed}, n {n})");
        let covers_det = det_via_cycle_covers(&g).unwrap();
        if covers_det != det_exact(&g) {
            return (
                i,
                Some(format!(
                    "counterexample {label}: cover det {covers_det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        let covers_per = per_via_cycle_covers(&g).unwrap();
        let scan_per = per_exact(&g).unwrap();
        if covers_per != scan_per {
            return (
                i,
                Some(format!(
                    "counterexample {label}: cover per {covers_per}, scan {scan_per}"
                )),
            );
        }
    }
    (cfg.cases, None)
}

/// Block sums against the dense oracles on random block graphs.
fn bpartition_oracle(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(2, 12);
    for i in 0..cfg.cases {
        let seed = cfg.seed.wrapping_add(i as u64);
        let g = gen_random_block_graph(seed, top, &[1, -1]);
        let d = block_decompose(&g).unwrap();
        let label = format!("random block graph (seed {seed}, n {})", g.n());
        let det = det_via_bpartitions(&g, &d).unwrap();
        if det != det_exact(&g) {
            return (
                i,
                Some(format!(
                    "counterexample {label}: block sum det {det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        let per = per_via_bpartitions(&g, &d).unwrap();
        let scan = per_exact(&g).unwrap();
        if per != scan {
            return (
                i,
                Some(format!(
                    "counterexample {label}: block sum per {per}, scan {scan}"
                )),
            );
        }
    }
    (cfg.cases, None)
}

/// Partition counting: the product over cut vertices of their block degrees,
/// and the two independent enumerations of block size tuples.
fn alpha_census(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(2, 12);
    let mut done = 0;
    let mut attempt = 0u64;
    while done < cfg.cases {
        let seed = cfg.seed.wrapping_add(attempt);
        attempt += 1;
        let g = gen_random_block_graph(seed, top, &[1, -1]);
        let d = block_decompose(&g).unwrap();
        if d.block_count() > 6 {
            continue; // the reference enumeration is exponential in blocks
        }
        let expected: u64 = d
            .cut_vertices()
            .iter()
            .map(|&v| d.blocks_containing(v).len() as u64)
            .product();
        let counted = bpartition_count(&g, &d).unwrap();
        if counted != expected {
            return (
                done,
                Some(format!(
                    "counterexample random block graph (seed {seed}): {counted} partitions, degree product {expected}"
                )),
            );
        }
        let mut by_assignment = alpha_tuples(&g, &d).unwrap();
        let mut by_constraints = alpha_tuples_by_constraints(&d);
        by_assignment.sort();
        by_constraints.sort();
        if by_assignment != by_constraints {
            return (
                done,
                Some(format!(
                    "counterexample random block graph (seed {seed}): size-tuple enumerations differ"
                )),
            );
        }
        done += 1;
    }
    (done, None)
}

/// Random clique trees, checked smallest first so a failure reports a small
/// reproducer. The fault switch negates the determinant formula here.
fn block_graph_formulas(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(2, 12);
    let mut shapes = Vec::new();
    for i in 0..cfg.cases {
        let mut state = cfg.seed.wrapping_add(i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        let mut sizes = vec![2 + next() % 4];
        let mut attach = Vec::new();
        let mut count = sizes[0];
        for _ in 0..next() % 4 {
            let s = 2 + next() % 4;
            if count + s - 1 > top {
                break;
            }
            attach.push((next() % count) as u32);
            count += s - 1;
            sizes.push(s);
        }
        shapes.push((count, sizes, attach));
    }
    shapes.sort();
    shapes.dedup();
    let total = shapes.len();
    for (_, sizes, attach) in shapes {
        let spec = FamilySpec::BlockGraph {
            sizes: sizes.clone(),
            attach: attach.clone(),
        };
        let g = spec.generate().unwrap();
        let mut det = forms::det_block_graph(&sizes, &attach).unwrap();
        if cfg.inject_fault {
            det = -det;
        }
        if det != det_exact(&g) {
            return (
                total,
                Some(format!(
                    "counterexample {spec}: formula det {det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        let per = forms::per_block_graph(&sizes, &attach).unwrap();
        let scan = per_exact(&g).unwrap();
        if per != scan {
            return (
                total,
                Some(format!(
                    "counterexample {spec}: formula per {per}, scan {scan}"
                )),
            );
        }
    }
    (total, None)
}

/// Complete graphs with negative sub-cliques: the whole legal parameter
/// grid, then glued multi-block shapes.
fn neg_clique_formulas(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(3, 10);
    let mut cases = 0;
    for n in 2..=top {
        for r in 2..n {
            for m in 1..=(n - 1) / r {
                let spec = FamilySpec::NegCliqueComplete { n, m, r };
                let g = spec.generate().unwrap();
                let det = forms::det_neg_clique_complete(n, m, r).unwrap();
                if det != det_exact(&g) {
                    return (
                        cases,
                        Some(format!(
                            "counterexample {spec}: formula {det}, elimination {}",
                            det_exact(&g)
                        )),
                    );
                }
                cases += 1;
            }
        }
    }
    let shapes: [&[(usize, usize, usize)]; 4] = [
        &[(3, 1, 2), (3, 1, 2)],
        &[(4, 1, 2), (4, 1, 2)],
        // A middle block needs spare vertices for both cut vertices and its
        // negative pair, so the three-block chain uses K_4 blocks.
        &[(4, 1, 2), (4, 1, 2), (4, 1, 2)],
        &[(5, 2, 2), (4, 1, 2), (6, 1, 3)],
    ];
    for blocks in shapes {
        let total: usize = blocks.iter().map(|b| b.0).sum::<usize>() - (blocks.len() - 1);
        if total > cfg.max_n.max(13) {
            continue;
        }
        let spec = FamilySpec::NegCliqueBlocks {
            blocks: blocks.to_vec(),
            attach: Vec::new(),
        };
        let g = spec.generate().unwrap();
        let det = forms::det_neg_clique_blocks(blocks, &[]).unwrap();
        if det != det_exact(&g) {
            return (
                cases,
                Some(format!(
                    "counterexample {spec}: formula {det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        cases += 1;
    }
    (cases, None)
}

/// Cycles with pendant trees, all three attachment patterns.
fn unicyclic_formulas(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(3, 8);
    for i in 0..cfg.cases {
        let seed = cfg.seed.wrapping_add(i as u64);
        let n = 3 + i % (top - 2);
        let delta = if i % 2 == 0 { 1 } else { -1 };
        let spec = match i % 3 {
            0 => FamilySpec::UnicyclicSingle {
                n,
                delta,
                tree: gen_random_signed_tree(seed, 1 + i % 5),
            },
            1 => FamilySpec::UnicyclicMulti {
                n,
                delta,
                trees: vec![
                    gen_random_signed_tree(seed, 1 + i % 4),
                    gen_random_signed_tree(seed ^ 0xffff, 1 + (i / 2) % 4),
                ],
            },
            _ => FamilySpec::UnicyclicTwo {
                n,
                delta,
                tree1: gen_random_signed_tree(seed, 1 + i % 4),
                tree2: gen_random_signed_tree(seed ^ 0xffff, 1 + (i / 2) % 4),
                distance: 1 + (i / 3) % (n / 2).max(1),
            },
        };
        let g = spec.generate().unwrap();
        let (det, per) = match &spec {
            FamilySpec::UnicyclicSingle { n, delta, tree } => (
                forms::det_unicyclic_single(*n, *delta, tree).unwrap(),
                forms::per_unicyclic_single(*n, *delta, tree).unwrap(),
            ),
            FamilySpec::UnicyclicMulti { n, delta, trees } => (
                forms::det_unicyclic_multi(*n, *delta, trees).unwrap(),
                forms::per_unicyclic_multi(*n, *delta, trees).unwrap(),
            ),
            FamilySpec::UnicyclicTwo {
                n,
                delta,
                tree1,
                tree2,
                distance,
            } => (
                forms::det_unicyclic_two(*n, *delta, tree1, tree2, *distance).unwrap(),
                forms::per_unicyclic_two(*n, *delta, tree1, tree2, *distance).unwrap(),
            ),
            _ => unreachable!(),
        };
        if det != det_exact(&g) {
            return (
                i,
                Some(format!(
                    "counterexample {spec}: formula det {det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        let scan = per_exact(&g).unwrap();
        if per != scan {
            return (
                i,
                Some(format!("counterexample {spec}: formula per {per}, scan {scan}")),
            );
        }
    }
    (cfg.cases, None)
}

/// Mixed complete digraphs, their single-vertex deletions, and stars.
fn mixed_formulas(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(4, 12);
    let mut cases = 0;
    for n in 4..=top {
        let spec = FamilySpec::MixedComplete { n };
        let g = spec.generate().unwrap();
        let det = forms::det_mixed_complete(n).unwrap();
        if det != det_exact(&g) {
            return (
                cases,
                Some(format!(
                    "counterexample {spec}: formula {det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        let keep: BTreeSet<u32> = (1..n as u32).collect();
        let (minor, _) = g.induced_subgraph(&keep).unwrap();
        let minus = forms::det_mixed_complete_minus_vertex(n).unwrap();
        if minus != det_exact(&minor) {
            return (
                cases,
                Some(format!(
                    "counterexample {spec} minus one vertex: formula {minus}, elimination {}",
                    det_exact(&minor)
                )),
            );
        }
        cases += 2;
    }
    for sizes in star_shapes(3) {
        let spec = FamilySpec::MixedStar {
            sizes: sizes.clone(),
        };
        let g = spec.generate().unwrap();
        let det = forms::det_mixed_star(&sizes).unwrap();
        if det != det_exact(&g) {
            return (
                cases,
                Some(format!(
                    "counterexample {spec}: formula {det}, elimination {}",
                    det_exact(&g)
                )),
            );
        }
        cases += 1;
    }
    (cases, None)
}

/// All star multisets with entries 3..=6 and up to `k` blocks, ascending.
fn star_shapes(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for count in 1..=k {
        let mut sizes = vec![3usize; count];
        loop {
            out.push(sizes.clone());
            let mut i = count;
            while i > 0 && sizes[i - 1] == 6 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            sizes[i - 1] += 1;
            let v = sizes[i - 1];
            for s in sizes[i..].iter_mut() {
                *s = v;
            }
        }
    }
    out
}

/// The negative variant: a float spectral product for the whole graph, an
/// integer recurrence for the vertex-deleted minor, and float stars.
fn neg_mixed_formulas(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(4, 12);
    let mut cases = 0;
    for n in 4..=top {
        let spec = FamilySpec::NegMixedComplete { n };
        let g = spec.generate().unwrap();
        let float = forms::det_neg_mixed_complete_float(n).unwrap();
        let exact = det_exact(&g).to_f64().unwrap();
        if (float - exact).abs() / exact.abs().max(1.0) >= FLOAT_TOLERANCE {
            return (
                cases,
                Some(format!(
                    "counterexample {spec}: float {float}, elimination {exact}"
                )),
            );
        }
        let keep: BTreeSet<u32> = (1..n as u32).collect();
        let (minor, _) = g.induced_subgraph(&keep).unwrap();
        let minus = forms::det_neg_mixed_complete_minus_vertex(n).unwrap();
        if minus != det_exact(&minor) {
            return (
                cases,
                Some(format!(
                    "counterexample {spec} minus one vertex: recurrence {minus}, elimination {}",
                    det_exact(&minor)
                )),
            );
        }
        cases += 2;
    }
    for sizes in star_shapes(3) {
        let spec = FamilySpec::NegMixedStar {
            sizes: sizes.clone(),
        };
        let g = spec.generate().unwrap();
        let float = forms::det_neg_mixed_star_float(&sizes).unwrap();
        let exact = det_exact(&g).to_f64().unwrap();
        if (float - exact).abs() / exact.abs().max(1.0) >= FLOAT_TOLERANCE {
            return (
                cases,
                Some(format!(
                    "counterexample {spec}: float {float}, elimination {exact}"
                )),
            );
        }
        cases += 1;
    }
    (cases, None)
}

/// Switching never changes det or per; one flipped edge inside a block is
/// always caught with a verifiably negative witness cycle.
fn balance_invariance(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(3, 10);
    for i in 0..cfg.cases {
        let seed = cfg.seed.wrapping_add(i as u64);
        let positive = gen_random_block_graph(seed, top, &[1]);
        let signature = gen_random_signature(seed ^ 0x5eed, positive.n());
        let switched = positive.conjugate(&signature).unwrap();
        let label = format!("switched block graph (seed {seed}, n {})", switched.n());
        if !matches!(is_balanced(&switched).unwrap(), Balance::Balanced(_)) {
            return (i, Some(format!("counterexample {label}: reported unbalanced")));
        }
        let plain = switched.underlying();
        if det_exact(&switched) != det_exact(&plain)
            || per_exact(&switched).unwrap() != per_exact(&plain).unwrap()
        {
            return (
                i,
                Some(format!(
                    "counterexample {label}: value changed under switching"
                )),
            );
        }
        let d = block_decompose(&switched).unwrap();
        let Some(block) = d.blocks().iter().find(|b| b.len() >= 3) else {
            continue;
        };
        let (u, v) = (block[0], block[1]);
        let arcs: Vec<(u32, u32, i64)> = switched
            .arcs()
            .map(|(x, y, w)| {
                if (x, y) == (u, v) || (x, y) == (v, u) {
                    (x, y, -w)
                } else {
                    (x, y, w)
                }
            })
            .collect();
        let planted = SignedDigraph::new(switched.n(), &arcs).unwrap();
        match is_balanced(&planted).unwrap() {
            Balance::Balanced(_) => {
                return (
                    i,
                    Some(format!(
                        "counterexample {label}: planted negative edge ({u}, {v}) not caught"
                    )),
                )
            }
            Balance::Unbalanced { cycle } => {
                if planted.cycle_sign(&cycle).unwrap() != -1 {
                    return (
                        i,
                        Some(format!(
                            "counterexample {label}: witness cycle {cycle:?} is not negative"
                        )),
                    );
                }
            }
        }
    }
    (cfg.cases, None)
}

/// Signed cycle formulas across both parities of length and sign product.
fn cycle_permanent_parity(cfg: &CheckConfig) -> SuiteBody {
    let top = cfg.max_n.clamp(4, 12);
    let mut cases = 0;
    for n in 3..=top {
        for delta in [1i64, -1] {
            let spec = FamilySpec::SignedCycle { n, delta };
            let g = spec.generate().unwrap();
            let per = forms::per_signed_cycle(n, delta).unwrap();
            let scan = per_exact(&g).unwrap();
            if per != scan {
                return (
                    cases,
                    Some(format!("counterexample {spec}: formula per {per}, scan {scan}")),
                );
            }
            let det = forms::det_signed_cycle(n, delta).unwrap();
            if det != det_exact(&g) {
                return (
                    cases,
                    Some(format!(
                        "counterexample {spec}: formula det {det}, elimination {}",
                        det_exact(&g)
                    )),
                );
            }
            cases += 1;
        }
    }
    (cases, None)
}
