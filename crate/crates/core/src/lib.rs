//! Combinatorics of odd-degree characters of the symmetric groups.
//!
//! An odd partition labels an irreducible character of odd degree. For
//! `2^k < n`, every odd partition of `n` has exactly one `2^k`-hook whose
//! removal leaves an odd partition; this defines the map `f_k`. The crate
//! computes `f_k` from hooks and from 2-core/2-quotient towers, describes
//! its fibers and image, decides when `f_k` and `f_l` commute, and checks
//! all of it against an independent branching-rule oracle.

pub mod cli;
pub mod error;
pub mod maps;
pub mod oddity;
pub mod oracle;
pub mod partition;
pub mod quotient;

pub use error::{Error, Result};
pub use maps::{
    commute_verdict, counterexample_witness, f_k, fiber, fiber_size_formula, image_misses,
    is_surjective, predicted_commute, CommuteInstance, CommuteVerdict, Fiber,
};
pub use oddity::{d_good, dnk, is_odd, is_odd_via_row, odd_partitions, DnkDecomposition};
pub use oracle::{cross_validate, skew_syt_parity, unique_odd_constituent, ParityReport};
pub use partition::{Hook, Partition};
pub use quotient::{
    core_tower, e_core, e_quotient, from_core_quotient, k_data, partition_from_kdata, tower_row,
    CoreQuotient, CoreTower, KData, QuotientTowerRow,
};
