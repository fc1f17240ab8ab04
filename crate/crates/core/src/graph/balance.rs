//! Balance of signed graphs: a symmetric signed graph is balanced when every
//! cycle has positive sign product, equivalently when some vertex signing
//! switches all edges positive.

use crate::error::{Error, Result};
use crate::graph::SignedDigraph;

/// A vertex signing `s : V -> {+1, -1}` used to switch a signed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingSignature {
    signs: Vec<i8>,
}

impl SwitchingSignature {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(format!(
                "signature entries must be +1 or -1, got {bad}"
            )));
        }
        Ok(SwitchingSignature { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, v: u32) -> i64 {
        self.signs[v as usize] as i64
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Outcome of a balance test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Balance {
    /// Every cycle is positive; switching by the signature makes every edge
    /// sign positive.
    Balanced(SwitchingSignature),
    /// A witness cycle (vertex sequence, closing edge implied) whose edge
    /// sign product is negative.
    Unbalanced { cycle: Vec<u32> },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }
}

/// Tests a symmetric signed graph for balance.
///
/// Signs are propagated over a spanning forest: the root gets +1 and each
/// tree edge forces its far endpoint. Every non-tree edge then either agrees
/// with the propagated signs (its sign product around the fundamental cycle
/// is positive) or hands us that cycle as an unbalance witness. Arcs must
/// come in symmetric pairs of equal weight; only weight signs matter.
pub fn is_balanced(g: &SignedDigraph) -> Result<Balance> {
    for (u, v, w) in g.arcs() {
        if g.weight(v, u) != Some(w) {
            return Err(Error::NonSymmetric { from: u, to: v });
        }
    }
    let n = g.n();
    let mut sign = vec![0i8; n];
    let mut parent = vec![u32::MAX; n];

    for root in 0..n as u32 {
        if sign[root as usize] != 0 {
            continue;
        }
        sign[root as usize] = 1;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for (v, w) in g.out_arcs(u) {
                if v != u && sign[v as usize] == 0 {
                    sign[v as usize] = sign[u as usize] * w.signum() as i8;
                    parent[v as usize] = u;
                    stack.push(v);
                }
            }
        }
    }

    for (u, v, w) in g.arcs() {
        if u == v {
            if w < 0 {
                // A negative loop is a one-vertex negative cycle.
                return Ok(Balance::Unbalanced { cycle: vec![u] });
            }
            continue;
        }
        if u > v {
            continue; // each symmetric pair once
        }
        let product = sign[u as usize] as i64 * sign[v as usize] as i64 * w.signum();
        if product < 0 {
            return Ok(Balance::Unbalanced {
                cycle: fundamental_cycle(&parent, u, v),
            });
        }
    }

    let sig = SwitchingSignature::new(sign).expect("propagated signs are unit");
    Ok(Balance::Balanced(sig))
}

/// The cycle formed by the forest paths from `u` and `v` to their lowest
/// common ancestor, closed by the edge (v, u). Returned as the vertex
/// sequence u, ..., lca, ..., v.
fn fundamental_cycle(parent: &[u32], u: u32, v: u32) -> Vec<u32> {
    let path_to_root = |mut x: u32| {
        let mut p = vec![x];
        while parent[x as usize] != u32::MAX {
            x = parent[x as usize];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Drop the shared suffix above the lowest common ancestor.
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    cycle
}
