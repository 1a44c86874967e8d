//! Command-line atlas of weighted homogeneous links: invariant records,
//! family searches and a JSON Lines catalog.

pub mod catalog;
pub mod config;
pub mod error;
pub mod record;
pub mod search;

pub use error::{AtlasError, Result};

use rand::{rngs::StdRng, Rng, SeedableRng};

/// Random samples keep `|z + c|` below this; rounding in `tan² - sec²`
/// grows like `tan²` towards the poles.
pub const EW_SAMPLE_EDGE: f64 = 1.2;

/// Seeded sample points `z` with `|z + c| < EW_SAMPLE_EDGE`.
pub fn ew_samples(count: usize, seed: u64, c: f64) -> Vec<f64> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| rng.gen_range(-EW_SAMPLE_EDGE..EW_SAMPLE_EDGE) - c)
        .collect()
}
