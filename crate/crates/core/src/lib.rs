//! Exact determinants and permanents of signed graphs and digraphs, with a
//! block-decomposition engine that exploits cut vertices.
//!
//! Three independent routes to the same numbers live side by side:
//!
//! * **Dense evaluation** ([`exact`]): fraction-free elimination for the
//!   determinant, a subset-sum scan for the permanent, and full cycle-cover
//!   enumeration for tiny instances. No structural assumptions.
//! * **Block sums** ([`bpartition`]): for connected graphs without loops on
//!   cut vertices, both quantities decompose into sums over assignments of
//!   cut vertices to blocks, turning one big computation into many small
//!   per-block ones.
//! * **Closed forms** ([`closed_forms`]): per-family formulas for complete
//!   graphs, cycles, paths, trees, glued blocks, unicyclic graphs, and the
//!   mixed (partially directed) complete families.
//!
//! [`generators`] builds all of those families, plus seeded random
//! instances, from a compact text grammar. Values are arbitrary-precision
//! integers ([`ExactValue`]); nothing here rounds.
//!
//! With the default `parallel` feature the permanent scan and the block
//! sums fan out over a rayon pool; results are bit-identical to the
//! sequential fallback because integer addition doesn't care about order.

#![forbid(unsafe_code)]

mod error;

pub mod bpartition;
pub mod closed_forms;
pub mod exact;
pub mod generators;
pub mod graph;

pub use error::{Error, Result};
pub use graph::{
    block_decompose, is_balanced, Balance, BlockDecomposition, SignedDigraph, SwitchingSignature,
};

/// All determinants and permanents are exact big integers.
pub type ExactValue = num_bigint::BigInt;

/// Caps the global thread pool used by the parallel code paths. Takes
/// effect only before their first use, and only once per process; later
/// calls are ignored. Without the `parallel` feature this is a no-op.
pub fn set_thread_count(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
