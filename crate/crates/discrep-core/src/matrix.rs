//! Seeded double-infinite matrices of uniform `[0,1)` entries.
//!
//! Entries are a pure function of `(seed, row, column)`, so any prefix of the
//! "same matrix" can be revisited without storing generator state, and the
//! `(n, j)` entry is identical across all prefixes that contain it.

use crate::error::{Error, Result};
use crate::geometry::PointSet;

const PREFIX_CELL_BUDGET: u64 = 100_000_000;

/// A seeded double-infinite matrix `(X_{n,s})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixSource {
    pub seed: u64,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl MatrixSource {
    pub fn new(seed: u64) -> Self {
        MatrixSource { seed }
    }

    /// The `(n, s)` entry, `n, s >= 1`; always in `[0, 1)`.
    ///
    /// Chained mixing of seed, row and column; a 53-bit draw divided by 2^53
    /// keeps 1.0 unreachable.
    pub fn entry(&self, n: u64, s: u64) -> f64 {
        debug_assert!(n >= 1 && s >= 1, "matrix indices start at 1");
        let mut h = mix(self.seed);
        h = mix(h ^ n);
        h = mix(h ^ s);
        (h >> 11) as f64 / (1u64 << 53) as f64
    }

    /// The top-left `N x s` block as a point set (rows are points).
    pub fn prefix(&self, n: usize, s: usize) -> Result<PointSet> {
        if n == 0 || s == 0 {
            return Err(Error::domain("prefix requires N >= 1 and s >= 1"));
        }
        if (n as u64).saturating_mul(s as u64) > PREFIX_CELL_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "prefix of {n} x {s} exceeds the {PREFIX_CELL_BUDGET}-cell budget"
            )));
        }
        let points = (1..=n)
            .map(|row| (1..=s).map(|col| self.entry(row as u64, col as u64)).collect())
            .collect();
        PointSet::new(points)
    }
}
