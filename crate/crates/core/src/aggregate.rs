//! Combining several experts' judgment matrices into one.

use serde::{Deserialize, Serialize};

use crate::error::AhpError;
use crate::matrix::{JudgmentMatrix, ScaleMode};

/// Element-wise mean used to combine expert matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMethod {
    /// Plain average. May break reciprocity.
    ArithmeticMean,
    /// Geometric mean; keeps `a_ji = 1 / a_ij`.
    #[default]
    GeometricMean,
}

impl std::str::FromStr for AggregationMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arithmetic" | "arithmetic_mean" => Ok(Self::ArithmeticMean),
            "geometric" | "geometric_mean" => Ok(Self::GeometricMean),
            other => Err(format!("unknown aggregation method {other:?}")),
        }
    }
}

/// Element-wise mean of `matrices`, re-validated as a reciprocal matrix.
///
/// Entries on which every input agrees are copied unchanged. The result is
/// checked with the loosest reciprocity tolerance among the inputs.
pub fn aggregate_judgments(
    matrices: &[JudgmentMatrix],
    method: AggregationMethod,
) -> Result<JudgmentMatrix, AhpError> {
    let first = matrices.first().ok_or(AhpError::EmptyInput)?;
    let order = first.order();
    if let Some(bad) = matrices.iter().find(|m| m.order() != order) {
        return Err(AhpError::OrderMismatch {
            expected: order,
            got: bad.order(),
        });
    }
    let reciprocity = matrices
        .iter()
        .map(|m| m.reciprocity())
        .max()
        .unwrap_or_default();
    let n = matrices.len() as f64;

    let entries: Vec<f64> = (0..order * order)
        .map(|k| {
            let value = first.entries()[k];
            if matrices.iter().all(|m| m.entries()[k] == value) {
                return value;
            }
            match method {
                AggregationMethod::ArithmeticMean => {
                    matrices.iter().map(|m| m.entries()[k]).sum::<f64>() / n
                }
                AggregationMethod::GeometricMean => {
                    (matrices.iter().map(|m| m.entries()[k].ln()).sum::<f64>() / n).exp()
                }
            }
        })
        .collect();

    JudgmentMatrix::from_entries(order, entries, ScaleMode::ReciprocalOnly, reciprocity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::validate_matrix;

    fn m(rows: &[Vec<f64>]) -> JudgmentMatrix {
        validate_matrix(rows, ScaleMode::StrictScale).unwrap()
    }

    #[test]
    fn single_matrix_is_unchanged() {
        let a = m(&[vec![1.0, 4.0], vec![0.25, 1.0]]);
        for method in [
            AggregationMethod::ArithmeticMean,
            AggregationMethod::GeometricMean,
        ] {
            assert_eq!(
                aggregate_judgments(std::slice::from_ref(&a), method).unwrap(),
                a
            );
        }
    }

    #[test]
    fn agreeing_entries_are_copied_exactly() {
        let a = m(&[vec![1.0, 5.0], vec![0.2, 1.0]]);
        for k in 1..=4 {
            let copies = vec![a.clone(); k];
            let g = aggregate_judgments(&copies, AggregationMethod::GeometricMean).unwrap();
            assert_eq!(g.entries(), a.entries());
        }
    }

    #[test]
    fn geometric_mean_of_two() {
        let a = m(&[vec![1.0, 4.0], vec![0.25, 1.0]]);
        let b = m(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let g = aggregate_judgments(&[a, b], AggregationMethod::GeometricMean).unwrap();
        assert!((g.get(0, 1) - 2.0).abs() < 1e-12);
        assert!((g.get(1, 0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn arithmetic_mean_breaks_reciprocity() {
        let a = m(&[vec![1.0, 4.0], vec![0.25, 1.0]]);
        let b = m(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        match aggregate_judgments(&[a, b], AggregationMethod::ArithmeticMean) {
            Err(AhpError::ReciprocityViolation {
                upper,
                lower,
                product,
                ..
            }) => {
                assert_eq!(upper, 2.5);
                assert_eq!(lower, 0.625);
                assert!((product - 1.5625).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn input_errors() {
        assert_eq!(
            aggregate_judgments(&[], AggregationMethod::GeometricMean),
            Err(AhpError::EmptyInput)
        );
        let a = m(&[vec![1.0]]);
        let b = m(&[vec![1.0, 2.0], vec![0.5, 1.0]]);
        assert_eq!(
            aggregate_judgments(&[a, b], AggregationMethod::GeometricMean),
            Err(AhpError::OrderMismatch {
                expected: 1,
                got: 2
            })
        );
    }

    #[test]
    fn method_names() {
        assert_eq!("geometric".parse(), Ok(AggregationMethod::GeometricMean));
        assert_eq!(
            "arithmetic_mean".parse(),
            Ok(AggregationMethod::ArithmeticMean)
        );
        assert!("median".parse::<AggregationMethod>().is_err());
    }
}
