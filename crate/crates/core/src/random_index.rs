//! Monte Carlo regeneration of the random consistency index.
//!
//! Each sample is a reciprocal matrix whose upper-triangle entries are drawn
//! uniformly from the 17 values of the judgment scale. The sample index space
//! is cut into fixed-size chunks; chunk `k` draws from its own ChaCha stream
//! `k` under the caller's seed, so the result does not depend on how rayon
//! schedules the chunks.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::consistency::{consistency_index, RiTable};
use crate::error::AhpError;
use crate::matrix::{JudgmentMatrix, Reciprocity, ScaleMode};
use crate::weights::{geometric_mean_weights, max_eigenvalue};

const CHUNK: usize = 4096;

/// The 17-point judgment scale `{1/9, ..., 1/2, 1, 2, ..., 9}` in ascending order.
pub fn saaty_scale() -> [f64; 17] {
    let mut values = [0.0; 17];
    for k in 0..8 {
        values[k] = 1.0 / (9 - k) as f64;
        values[9 + k] = (k + 2) as f64;
    }
    values[8] = 1.0;
    values
}

/// Mean consistency index over `samples` random reciprocal matrices of `order`.
pub fn simulate_ri(order: usize, samples: usize, seed: u64) -> Result<f64, AhpError> {
    if order < 3 {
        return Err(AhpError::OrderTooSmall { order });
    }
    if samples == 0 {
        return Err(AhpError::NoSamples);
    }
    let scale = saaty_scale();
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = CHUNK.min(samples - chunk * CHUNK);
            (0..count)
                .map(|_| sample_ci(order, &mut rng, &scale))
                .sum::<f64>()
        })
        .collect();
    Ok(partial.iter().sum::<f64>() / samples as f64)
}

/// Simulate every order from 3 to `max_order` and return the resulting table.
pub fn simulate_ri_table(max_order: usize, samples: usize, seed: u64) -> Result<RiTable, AhpError> {
    let mut values = BTreeMap::from([(1, 0.0), (2, 0.0)]);
    for order in 3..=max_order {
        values.insert(order, simulate_ri(order, samples, seed)?);
    }
    RiTable::new(values)
}

/// Draw one random reciprocal matrix and return its consistency index.
fn sample_ci(order: usize, rng: &mut ChaCha8Rng, scale: &[f64; 17]) -> f64 {
    let mut entries = vec![1.0; order * order];
    for i in 0..order {
        for j in (i + 1)..order {
            let idx = rng.random_range(0..scale.len());
            // The scale is symmetric: index 16 - idx holds the reciprocal.
            entries[i * order + j] = scale[idx];
            entries[j * order + i] = scale[16 - idx];
        }
    }
    let matrix =
        JudgmentMatrix::from_entries(order, entries, ScaleMode::StrictScale, Reciprocity::Exact)
            .expect("scale draws form a valid reciprocal matrix");
    let weights = geometric_mean_weights(&matrix);
    let mu_max = max_eigenvalue(&matrix, &weights).expect("weights match matrix order");
    consistency_index(mu_max, order)
}
