//! 3-d upper hull by partition rounds with cell pruning.

mod algorithm;
mod lp;
pub mod oracle;
mod partition;

pub use algorithm::{hull3d, round_sizes, Hull3Config, Hull3Result, RoundStat};
pub use lp::{below_upper_hull_batch, BelowOracle};
pub use oracle::{
    bruteforce_upper_hull, full_hull, hull3d_oracle, incremental_upper_hull, upper_hull_of, verify_upper_hull3, Hull3Oracle,
    UpperHull3,
};
pub use partition::{crossing_stat, kd_partition3, Partition3};
