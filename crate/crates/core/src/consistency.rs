//! Consistency index, random index table and consistency ratio.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::AhpError;
use crate::matrix::JudgmentMatrix;
use crate::weights::{geometric_mean_weights, max_eigenvalue, WeightVector};

/// A matrix passes when its consistency ratio is strictly below this.
pub const CR_THRESHOLD: f64 = 0.1;

/// Saaty's random index for orders 1 through 11.
pub const SAATY_RI: [f64; 11] = [
    0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51,
];

/// Mean consistency index of random reciprocal matrices, by order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<usize, f64>", into = "BTreeMap<usize, f64>")]
pub struct RiTable {
    values: BTreeMap<usize, f64>,
}

impl Default for RiTable {
    fn default() -> Self {
        Self::saaty()
    }
}

impl RiTable {
    pub fn saaty() -> Self {
        Self {
            values: SAATY_RI
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1, v))
                .collect(),
        }
    }

    /// Build a table, checking that orders 1 and 2 map to 0 and that values
    /// increase strictly from order 3 on.
    pub fn new(values: BTreeMap<usize, f64>) -> Result<Self, AhpError> {
        let table = Self { values };
        table.check()?;
        Ok(table)
    }

    fn check(&self) -> Result<(), AhpError> {
        let bad = |msg: String| Err(AhpError::InvalidRiTable(msg));
        if self.values.contains_key(&0) {
            return bad("order 0 is not a matrix order".into());
        }
        for order in [1, 2] {
            match self.values.get(&order) {
                Some(&v) if v != 0.0 => {
                    return bad(format!("order {order} must map to 0, got {v}"))
                }
                _ => {}
            }
        }
        let mut prev: Option<(usize, f64)> = None;
        for (&order, &v) in self.values.range(3..) {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("order {order} has non-positive value {v}"));
            }
            if let Some((po, pv)) = prev {
                if v <= pv {
                    return bad(format!(
                        "value for order {order} ({v}) does not exceed order {po} ({pv})"
                    ));
                }
            }
            prev = Some((order, v));
        }
        Ok(())
    }

    /// Random index for `order`. Orders 1 and 2 are always 0.
    pub fn get(&self, order: usize) -> Option<f64> {
        match order {
            0 => None,
            1 | 2 => Some(0.0),
            _ => self.values.get(&order).copied(),
        }
    }

    /// Add or replace the value for one order, e.g. from a simulation.
    pub fn with_order(mut self, order: usize, value: f64) -> Result<Self, AhpError> {
        self.values.insert(order, value);
        self.check()?;
        Ok(self)
    }

    pub fn max_order(&self) -> usize {
        self.values.keys().next_back().copied().unwrap_or(2).max(2)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }
}

impl TryFrom<BTreeMap<usize, f64>> for RiTable {
    type Error = AhpError;

    fn try_from(values: BTreeMap<usize, f64>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<RiTable> for BTreeMap<usize, f64> {
    fn from(table: RiTable) -> Self {
        table.values
    }
}

/// Consistency figures for one judgment matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub order: usize,
    pub mu_max: f64,
    pub ci: f64,
    pub ri: f64,
    pub cr: f64,
    pub passed: bool,
}

impl ConsistencyReport {
    /// Report for a single-child node: order 1, all indices zero.
    pub fn trivial() -> Self {
        Self {
            order: 1,
            mu_max: 1.0,
            ci: 0.0,
            ri: 0.0,
            cr: 0.0,
            passed: true,
        }
    }
}

/// Derive weights and check consistency of `matrix`.
pub fn consistency_report(
    matrix: &JudgmentMatrix,
    ri_table: &RiTable,
) -> Result<ConsistencyReport, AhpError> {
    let weights = geometric_mean_weights(matrix);
    consistency_report_with_weights(matrix, &weights, ri_table)
}

/// Same as [`consistency_report`] with weights already derived from `matrix`.
pub fn consistency_report_with_weights(
    matrix: &JudgmentMatrix,
    weights: &WeightVector,
    ri_table: &RiTable,
) -> Result<ConsistencyReport, AhpError> {
    let order = matrix.order();
    let ri = ri_table
        .get(order)
        .ok_or(AhpError::OrderNotInRiTable { order })?;
    let mu_max = max_eigenvalue(matrix, weights)?;
    // Orders 1 and 2 are always consistent; RI = 0 leaves CR undefined there.
    let (ci, cr) = if order <= 2 {
        (0.0, 0.0)
    } else {
        let ci = consistency_index(mu_max, order);
        (ci, ci / ri)
    };
    Ok(ConsistencyReport {
        order,
        mu_max,
        ci,
        ri,
        cr,
        passed: cr < CR_THRESHOLD,
    })
}

/// `(mu_max - m) / (m - 1)`, or 0 for orders below 2.
pub fn consistency_index(mu_max: f64, order: usize) -> f64 {
    if order < 2 {
        0.0
    } else {
        (mu_max - order as f64) / (order as f64 - 1.0)
    }
}
