use std::ops::AddAssign;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Per-run counters of the primitive operations an algorithm performs.
///
/// `comparisons` counts coordinate comparisons; a dominance test made of
/// comparisons is additionally tallied in `dominance_tests`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostMeter {
    pub comparisons: u64,
    pub orient2d_calls: u64,
    pub orient3d_calls: u64,
    pub dominance_tests: u64,
    pub wall_ns: u64,
}

impl CostMeter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Comparisons plus orientation tests: the cost measure used for bounds.
    pub fn total_tests(&self) -> u64 {
        self.comparisons + self.orient2d_calls + self.orient3d_calls
    }

    /// Runs `f` and adds its elapsed wall time.
    pub fn timed<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        let t = Instant::now();
        let out = f(self);
        self.wall_ns += t.elapsed().as_nanos() as u64;
        out
    }

    /// Same counters with wall time cleared, for deterministic comparisons.
    pub fn counts_only(mut self) -> Self {
        self.wall_ns = 0;
        self
    }
}

impl AddAssign for CostMeter {
    fn add_assign(&mut self, o: Self) {
        self.comparisons += o.comparisons;
        self.orient2d_calls += o.orient2d_calls;
        self.orient3d_calls += o.orient3d_calls;
        self.dominance_tests += o.dominance_tests;
        self.wall_ns += o.wall_ns;
    }
}
