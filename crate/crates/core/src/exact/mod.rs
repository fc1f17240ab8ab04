//! Dense exact evaluators: fraction-free determinants, inclusion-exclusion
//! permanents, and brute-force cycle-cover enumeration. These are the
//! reference implementations every other evaluation route is checked
//! against; they work on any graph, block structure or not.

mod bareiss;
mod covers;
mod ryser;

pub use bareiss::det_exact;
pub use covers::{
    cycle_covers, det_via_cycle_covers, for_each_cycle_cover, per_via_cycle_covers, CycleCover,
    CYCLE_COVER_BOUND,
};
#[cfg(feature = "parallel")]
pub use ryser::per_exact_par;
pub use ryser::{per_exact, per_exact_bounded, per_exact_seq, DEFAULT_PERMANENT_BOUND};
