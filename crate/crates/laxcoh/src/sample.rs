//! Deterministic sampling of check grids.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default degree bound of sample grids.
pub const DEFAULT_GRID_BOUND: i64 = 4;

/// Sampling parameters: a degree bound, an optional budget and a seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleGrid {
    pub bound: i64,
    pub budget: Option<usize>,
    pub seed: u64,
}

impl Default for SampleGrid {
    fn default() -> Self {
        SampleGrid { bound: DEFAULT_GRID_BOUND, budget: None, seed: 0 }
    }
}

impl SampleGrid {
    pub fn new(bound: i64, budget: Option<usize>, seed: u64) -> Self {
        SampleGrid { bound, budget, seed }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        -self.bound..=self.bound
    }

    /// The whole grid when there is no budget, otherwise a seeded shuffle
    /// truncated to the budget.
    pub fn pick<T>(&self, mut grid: Vec<T>) -> Vec<T> {
        match self.budget {
            Some(b) if b < grid.len() => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                grid.shuffle(&mut rng);
                grid.truncate(b);
                grid
            }
            _ => grid,
        }
    }
}
