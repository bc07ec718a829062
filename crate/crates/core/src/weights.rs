//! Priority derivation by row geometric means.

use serde::Serialize;

use crate::error::AhpError;
use crate::matrix::JudgmentMatrix;

/// Normalized local priorities of the factors compared in one matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    /// Normalized weights, summing to 1.
    pub weights: Vec<f64>,
    /// Row geometric means before normalization.
    pub raw_geometric_means: Vec<f64>,
}

impl WeightVector {
    /// The trivial vector `[1]` for a node with a single child.
    pub fn unit() -> Self {
        Self {
            weights: vec![1.0],
            raw_geometric_means: vec![1.0],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Row geometric means `(prod_j a_ij)^(1/m)`, normalized to sum to 1.
///
/// Products are accumulated as sums of logarithms so large orders with
/// extreme ratios cannot overflow.
pub fn geometric_mean_weights(matrix: &JudgmentMatrix) -> WeightVector {
    weights_from_entries(matrix.order(), matrix.entries())
}

fn weights_from_entries(m: usize, entries: &[f64]) -> WeightVector {
    let inv_m = 1.0 / m as f64;
    let raw: Vec<f64> = entries
        .chunks(m)
        .map(|row| {
            let log_sum: f64 = row.iter().map(|a| a.ln()).sum();
            (log_sum * inv_m).exp()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    WeightVector {
        weights: raw.iter().map(|r| r / total).collect(),
        raw_geometric_means: raw,
    }
}

/// Estimate of the principal eigenvalue: `sum_i (A w)_i / (m w_i)`.
pub fn max_eigenvalue(matrix: &JudgmentMatrix, weights: &WeightVector) -> Result<f64, AhpError> {
    let m = matrix.order();
    let aw = matrix.mul_vec(&weights.weights)?;
    Ok(aw
        .iter()
        .zip(&weights.weights)
        .map(|(awi, wi)| awi / (m as f64 * wi))
        .sum())
}
