use serde::Serialize;

use crate::error::AhpError;
use crate::matrix::JudgmentMatrix;
use crate::model::evaluate::{compose, CompositeWeightTable, EvaluationResult};
use crate::weights::WeightVector;

/// Re-rank after forcing one node's local weight to `new_local_weight`.
///
/// The node's siblings are rescaled by a common factor so the sibling group
/// still sums to 1. `result` is left untouched.
pub fn sensitivity(
    result: &EvaluationResult,
    node_id: &str,
    new_local_weight: f64,
) -> Result<CompositeWeightTable, AhpError> {
    let hierarchy = result.hierarchy();
    if hierarchy.find(node_id).is_none() {
        return Err(AhpError::UnknownNode(node_id.to_string()));
    }
    let parent = hierarchy
        .parent_of(node_id)
        .ok_or_else(|| AhpError::RootNode(node_id.to_string()))?;
    if !(new_local_weight > 0.0 && new_local_weight < 1.0) {
        return Err(AhpError::WeightOutOfRange(new_local_weight));
    }
    if parent.children.len() < 2 {
        return Err(AhpError::NoSiblings(node_id.to_string()));
    }

    let mut local = result.local_weights();
    let current = local[node_id];
    let factor = (1.0 - new_local_weight) / (1.0 - current);
    for sibling in &parent.children {
        if sibling.id == node_id {
            local.insert(sibling.id.clone(), new_local_weight);
        } else if let Some(w) = local.get_mut(&sibling.id) {
            *w *= factor;
        }
    }
    Ok(compose(hierarchy, &local))
}

/// A pair whose judgment disagrees with the ratio implied by the weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hotspot {
    pub i: usize,
    pub j: usize,
    /// `a_ij * w_j / w_i`; 1 when the judgment matches the weights exactly.
    pub error_ratio: f64,
}

/// The `top_k` pairs `i < j` with the largest `|ln(a_ij * w_j / w_i)|`.
pub fn inconsistency_hotspots(
    matrix: &JudgmentMatrix,
    weights: &WeightVector,
    top_k: usize,
) -> Result<Vec<Hotspot>, AhpError> {
    let m = matrix.order();
    if weights.len() != m {
        return Err(AhpError::DimensionMismatch {
            matrix: m,
            vector: weights.len(),
        });
    }
    let w = &weights.weights;
    let mut pairs: Vec<Hotspot> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .map(|(i, j)| Hotspot {
            i,
            j,
            error_ratio: matrix.get(i, j) * w[j] / w[i],
        })
        .collect();
    // Stable sort keeps row-major order among equal deviations.
    pairs.sort_by(|a, b| {
        b.error_ratio
            .ln()
            .abs()
            .total_cmp(&a.error_ratio.ln().abs())
    });
    pairs.truncate(top_k);
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::RiTable;
    use crate::matrix::ScaleMode;
    use crate::model::evaluate::evaluate;
    use crate::model::hierarchy::{Hierarchy, Node};
    use crate::weights::geometric_mean_weights;

    fn two_level() -> EvaluationResult {
        let b1 = Node::internal("B1", "", vec![Node::leaf("C11", "")]);
        let b2 = Node::internal("B2", "", vec![Node::leaf("C21", ""), Node::leaf("C22", "")])
            .with_matrix(JudgmentMatrix::from_weights(&[3.0, 1.0]).unwrap());
        let root = Node::internal("A", "", vec![b1, b2])
            .with_matrix(JudgmentMatrix::from_weights(&[1.0, 1.0]).unwrap());
        evaluate(&Hierarchy::new(root, vec![]).unwrap(), &RiTable::saaty()).unwrap()
    }

    #[test]
    fn same_weight_is_a_no_op() {
        let r = two_level();
        let current = r.local_weights()["C21"];
        let t = sensitivity(&r, "C21", current).unwrap();
        assert_eq!(t, r.composite);
    }

    #[test]
    fn rescales_siblings() {
        let r = two_level();
        let t = sensitivity(&r, "B1", 0.8).unwrap();
        assert!((t.get("C11").unwrap().global_weight - 0.8).abs() < 1e-12);
        assert!((t.get("C21").unwrap().global_weight - 0.2 * 0.75).abs() < 1e-12);
        assert!((t.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let r = two_level();
        assert_eq!(
            sensitivity(&r, "Q", 0.5),
            Err(AhpError::UnknownNode("Q".into()))
        );
        assert_eq!(
            sensitivity(&r, "A", 0.5),
            Err(AhpError::RootNode("A".into()))
        );
        assert_eq!(
            sensitivity(&r, "B1", 1.2),
            Err(AhpError::WeightOutOfRange(1.2))
        );
        assert_eq!(
            sensitivity(&r, "B1", 0.0),
            Err(AhpError::WeightOutOfRange(0.0))
        );
        assert_eq!(
            sensitivity(&r, "C11", 0.5),
            Err(AhpError::NoSiblings("C11".into()))
        );
    }

    #[test]
    fn consistent_matrix_has_no_hotspot() {
        let m = JudgmentMatrix::from_weights(&[0.4, 0.3, 0.2, 0.1]).unwrap();
        let w = geometric_mean_weights(&m);
        let h = inconsistency_hotspots(&m, &w, 10).unwrap();
        assert_eq!(h.len(), 6);
        assert!(h.iter().all(|p| p.error_ratio.ln().abs() < 1e-9));
    }

    #[test]
    fn cyclic_triad_matches_exhaustive_search() {
        let third = 1.0 / 3.0;
        let m = JudgmentMatrix::from_upper_triangle(3, &[3.0, third, 3.0], ScaleMode::StrictScale)
            .unwrap();
        let w = geometric_mean_weights(&m);
        let top = inconsistency_hotspots(&m, &w, 1).unwrap();
        assert_eq!(top.len(), 1);
        let mut best = 0.0f64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let e = (m.get(i, j) * w.weights[j] / w.weights[i]).ln().abs();
                best = best.max(e);
            }
        }
        assert!((top[0].error_ratio.ln().abs() - best).abs() < 1e-12);
        // Equal weights: every pair deviates by ln 3.
        assert!((best - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hotspot_dimension_mismatch() {
        let m = JudgmentMatrix::from_weights(&[1.0, 2.0]).unwrap();
        assert!(inconsistency_hotspots(&m, &WeightVector::unit(), 1).is_err());
    }
}
