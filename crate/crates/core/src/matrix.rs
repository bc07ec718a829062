//! Pairwise judgment matrices.
//!
//! A judgment matrix holds the ratio `a[i][j]` expressing how much more
//! important factor `i` is than factor `j`. Valid matrices are square,
//! strictly positive, have a unit diagonal and are reciprocal
//! (`a[j][i] = 1 / a[i][j]`).

use serde::{Deserialize, Serialize, Serializer};

use crate::error::AhpError;

/// Largest ratio on the 1..9 judgment scale.
pub const SCALE_MAX: f64 = 9.0;

/// Relative reciprocity tolerance for programmatic input.
pub const EXACT_RECIPROCITY_TOL: f64 = 1e-9;

/// Relative reciprocity tolerance for matrices transcribed at four decimals.
pub const PUBLISHED_RECIPROCITY_TOL: f64 = 5e-4;

const DIAGONAL_TOL: f64 = 1e-12;
const SCALE_SLACK: f64 = 1e-12;

/// Whether off-diagonal entries must sit on the 1/9..9 scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScaleMode {
    /// Every off-diagonal entry must lie in `[1/9, 9]`.
    StrictScale,
    /// Any positive reciprocal entry is accepted (aggregated matrices).
    #[default]
    ReciprocalOnly,
}

/// How closely `a[i][j] * a[j][i]` must match 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reciprocity {
    /// `|a_ij * a_ji - 1| <= 1e-9`.
    #[default]
    Exact,
    /// `|a_ij * a_ji - 1| <= 5e-4`, for matrices rounded to four decimals.
    Published,
}

impl Reciprocity {
    pub fn tolerance(self) -> f64 {
        match self {
            Reciprocity::Exact => EXACT_RECIPROCITY_TOL,
            Reciprocity::Published => PUBLISHED_RECIPROCITY_TOL,
        }
    }
}

/// A validated square positive reciprocal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct JudgmentMatrix {
    order: usize,
    entries: Vec<f64>,
    reciprocity: Reciprocity,
}

/// Validate `rows` with exact reciprocity.
pub fn validate_matrix(rows: &[Vec<f64>], mode: ScaleMode) -> Result<JudgmentMatrix, AhpError> {
    JudgmentMatrix::new(rows, mode, Reciprocity::Exact)
}

impl JudgmentMatrix {
    pub fn new(
        rows: &[Vec<f64>],
        mode: ScaleMode,
        reciprocity: Reciprocity,
    ) -> Result<Self, AhpError> {
        let order = rows.len();
        if order == 0 {
            return Err(AhpError::EmptyMatrix);
        }
        for (row, values) in rows.iter().enumerate() {
            if values.len() != order {
                return Err(AhpError::NotSquare {
                    row,
                    len: values.len(),
                    expected: order,
                });
            }
        }
        let entries: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_entries(order, entries, mode, reciprocity)
    }

    /// Validate a row-major entry buffer of length `order * order`.
    pub fn from_entries(
        order: usize,
        entries: Vec<f64>,
        mode: ScaleMode,
        reciprocity: Reciprocity,
    ) -> Result<Self, AhpError> {
        if order == 0 {
            return Err(AhpError::EmptyMatrix);
        }
        if entries.len() != order * order {
            return Err(AhpError::NotSquare {
                row: entries.len() / order,
                len: entries.len() % order,
                expected: order,
            });
        }
        let at = |i: usize, j: usize| entries[i * order + j];

        for i in 0..order {
            for j in 0..order {
                let value = at(i, j);
                if !(value.is_finite() && value > 0.0) {
                    return Err(AhpError::NonPositiveEntry {
                        row: i,
                        col: j,
                        value,
                    });
                }
            }
        }
        for i in 0..order {
            let value = at(i, i);
            if (value - 1.0).abs() > DIAGONAL_TOL {
                return Err(AhpError::DiagonalNotOne { index: i, value });
            }
        }
        let tol = reciprocity.tolerance();
        for i in 0..order {
            for j in (i + 1)..order {
                let (upper, lower) = (at(i, j), at(j, i));
                let product = upper * lower;
                if (product - 1.0).abs() > tol {
                    return Err(AhpError::ReciprocityViolation {
                        row: i,
                        col: j,
                        upper,
                        lower,
                        product,
                    });
                }
            }
        }
        if mode == ScaleMode::StrictScale {
            let lo = 1.0 / SCALE_MAX - SCALE_SLACK;
            let hi = SCALE_MAX + SCALE_SLACK;
            for i in 0..order {
                for j in 0..order {
                    let value = at(i, j);
                    if i != j && !(lo..=hi).contains(&value) {
                        return Err(AhpError::ScaleOutOfRange {
                            row: i,
                            col: j,
                            value,
                        });
                    }
                }
            }
        }

        Ok(Self {
            order,
            entries,
            reciprocity,
        })
    }

    /// Build the perfectly consistent matrix `a[i][j] = weights[i] / weights[j]`.
    pub fn from_weights(weights: &[f64]) -> Result<Self, AhpError> {
        let order = weights.len();
        let mut entries = Vec::with_capacity(order * order);
        for &wi in weights {
            for &wj in weights {
                entries.push(wi / wj);
            }
        }
        Self::from_entries(
            order,
            entries,
            ScaleMode::ReciprocalOnly,
            Reciprocity::Exact,
        )
    }

    /// Build a matrix from its strict upper triangle, filling in reciprocals
    /// and the unit diagonal. `upper` is indexed row-major over pairs `i < j`.
    pub fn from_upper_triangle(
        order: usize,
        upper: &[f64],
        mode: ScaleMode,
    ) -> Result<Self, AhpError> {
        let pairs = order * order.saturating_sub(1) / 2;
        if upper.len() != pairs {
            return Err(AhpError::OrderMismatch {
                expected: pairs,
                got: upper.len(),
            });
        }
        let mut entries = vec![1.0; order * order];
        let mut k = 0;
        for i in 0..order {
            for j in (i + 1)..order {
                entries[i * order + j] = upper[k];
                entries[j * order + i] = 1.0 / upper[k];
                k += 1;
            }
        }
        Self::from_entries(order, entries, mode, Reciprocity::Exact)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn reciprocity(&self) -> Reciprocity {
        self.reciprocity
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.order)
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// Matrix-vector product `A v`.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>, AhpError> {
        if v.len() != self.order {
            return Err(AhpError::DimensionMismatch {
                matrix: self.order,
                vector: v.len(),
            });
        }
        Ok((0..self.order)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        Self {
            order: n,
            entries,
            reciprocity: self.reciprocity,
        }
    }

    /// Reorder factors so that new factor `k` is old factor `perm[k]`.
    ///
    /// # Panics
    /// If `perm` is not a permutation of `0..order`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n, "permutation length must equal matrix order");
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut entries = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                entries.push(self.get(pi, pj));
            }
        }
        Self {
            order: n,
            entries,
            reciprocity: self.reciprocity,
        }
    }
}

impl Serialize for JudgmentMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn criteria_matrix() -> Vec<Vec<f64>> {
        vec![
            vec![1.0, 1.3803, 1.5556, 1.5806, 1.5077, 2.3902],
            vec![0.7245, 1.0, 1.1270, 1.1452, 1.0923, 1.7317],
            vec![0.6429, 0.8873, 1.0, 1.0161, 0.9692, 1.5366],
            vec![0.6327, 0.8732, 0.9841, 1.0, 0.9538, 1.5122],
            vec![0.6633, 0.9155, 1.0317, 1.0484, 1.0, 1.5854],
            vec![0.4184, 0.5775, 0.6508, 0.6613, 0.6308, 1.0],
        ]
    }

    #[test]
    fn identity_of_order_one_is_valid() {
        let m = validate_matrix(&[vec![1.0]], ScaleMode::StrictScale).unwrap();
        assert_eq!(m.order(), 1);
    }

    #[test]
    fn averaged_matrix_validates_leniently() {
        let m = JudgmentMatrix::new(
            &criteria_matrix(),
            ScaleMode::ReciprocalOnly,
            Reciprocity::Published,
        )
        .unwrap();
        assert_eq!(m.order(), 6);
        assert_eq!(m.get(0, 1), 1.3803);
    }

    #[test]
    fn averaged_matrix_fails_exact_reciprocity() {
        let err = validate_matrix(&criteria_matrix(), ScaleMode::ReciprocalOnly).unwrap_err();
        assert!(matches!(err, AhpError::ReciprocityViolation { .. }));
    }

    #[test]
    fn non_reciprocal_pair_is_rejected() {
        let err = validate_matrix(&[vec![1.0, 2.0], vec![0.4, 1.0]], ScaleMode::ReciprocalOnly)
            .unwrap_err();
        match err {
            AhpError::ReciprocityViolation {
                row, col, product, ..
            } => {
                assert_eq!((row, col), (0, 1));
                assert!((product - 0.8).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            validate_matrix(&[], ScaleMode::ReciprocalOnly),
            Err(AhpError::EmptyMatrix)
        );
        assert!(matches!(
            validate_matrix(&[vec![1.0, 2.0], vec![0.5]], ScaleMode::ReciprocalOnly),
            Err(AhpError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            validate_matrix(
                &[vec![1.0, -2.0], vec![-0.5, 1.0]],
                ScaleMode::ReciprocalOnly
            ),
            Err(AhpError::NonPositiveEntry { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            validate_matrix(
                &[vec![1.0, f64::NAN], vec![0.5, 1.0]],
                ScaleMode::ReciprocalOnly
            ),
            Err(AhpError::NonPositiveEntry { .. })
        ));
        assert!(matches!(
            validate_matrix(&[vec![2.0, 2.0], vec![0.5, 1.0]], ScaleMode::ReciprocalOnly),
            Err(AhpError::DiagonalNotOne { index: 0, .. })
        ));
    }

    #[test]
    fn strict_scale_bounds() {
        let wide = [vec![1.0, 12.0], vec![1.0 / 12.0, 1.0]];
        assert!(validate_matrix(&wide, ScaleMode::ReciprocalOnly).is_ok());
        assert!(matches!(
            validate_matrix(&wide, ScaleMode::StrictScale),
            Err(AhpError::ScaleOutOfRange { .. })
        ));
        let edge = [vec![1.0, 9.0], vec![1.0 / 9.0, 1.0]];
        assert!(validate_matrix(&edge, ScaleMode::StrictScale).is_ok());
    }

    #[test]
    fn upper_triangle_fills_reciprocals() {
        let m =
            JudgmentMatrix::from_upper_triangle(3, &[3.0, 1.0 / 3.0, 3.0], ScaleMode::StrictScale)
                .unwrap();
        assert_eq!(m.get(1, 0), 1.0 / 3.0);
        assert_eq!(m.get(2, 0), 3.0);
        assert_eq!(m.get(2, 1), 1.0 / 3.0);
    }

    #[test]
    fn permutation_and_transpose() {
        let m = JudgmentMatrix::from_weights(&[0.5, 0.3, 0.2]).unwrap();
        let p = m.permuted(&[2, 0, 1]);
        assert_eq!(p.get(0, 1), m.get(2, 0));
        assert_eq!(m.transpose().get(0, 1), m.get(1, 0));
    }
}
