use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::consistency::{consistency_report_with_weights, ConsistencyReport, RiTable};
use crate::error::AhpError;
use crate::model::hierarchy::{Hierarchy, Node};
use crate::weights::{geometric_mean_weights, WeightVector};

/// Local weights and consistency of one internal node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeEvaluation {
    pub node_id: String,
    pub label: String,
    pub child_ids: Vec<String>,
    pub weights: WeightVector,
    pub consistency: ConsistencyReport,
}

/// One leaf in the composite ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositeRow {
    pub leaf_id: String,
    pub label: String,
    pub parent_id: String,
    pub local_weight: f64,
    pub global_weight: f64,
}

/// Leaves ordered by descending global weight, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositeWeightTable {
    pub rows: Vec<CompositeRow>,
}

impl CompositeWeightTable {
    pub fn get(&self, leaf_id: &str) -> Option<&CompositeRow> {
        self.rows.iter().find(|r| r.leaf_id == leaf_id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.leaf_id.as_str()).collect()
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().map(|r| r.global_weight).sum()
    }
}

/// Everything derived from a fully specified hierarchy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationResult {
    #[serde(skip_serializing)]
    hierarchy: Hierarchy,
    /// Internal nodes in pre-order.
    pub nodes: Vec<NodeEvaluation>,
    pub composite: CompositeWeightTable,
    pub all_passed: bool,
}

impl EvaluationResult {
    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }

    pub fn node(&self, id: &str) -> Option<&NodeEvaluation> {
        self.nodes.iter().find(|n| n.node_id == id)
    }

    /// Local weight of every non-root node.
    pub fn local_weights(&self) -> HashMap<String, f64> {
        self.nodes
            .iter()
            .flat_map(|n| {
                n.child_ids
                    .iter()
                    .cloned()
                    .zip(n.weights.weights.iter().copied())
            })
            .collect()
    }

    pub fn failed_nodes(&self) -> impl Iterator<Item = &NodeEvaluation> {
        self.nodes.iter().filter(|n| !n.consistency.passed)
    }
}

/// Derive local weights and consistency per internal node and compose
/// global leaf weights. Consistency failures are flagged, not fatal.
pub fn evaluate(hierarchy: &Hierarchy, ri: &RiTable) -> Result<EvaluationResult, AhpError> {
    let mut nodes = Vec::new();
    for node in hierarchy.internal_nodes() {
        nodes.push(evaluate_node(node, ri)?);
    }
    let all_passed = nodes.iter().all(|n| n.consistency.passed);
    let local: HashMap<String, f64> = nodes
        .iter()
        .flat_map(|n| {
            n.child_ids
                .iter()
                .cloned()
                .zip(n.weights.weights.iter().copied())
        })
        .collect();
    let composite = compose(hierarchy, &local);
    Ok(EvaluationResult {
        hierarchy: hierarchy.clone(),
        nodes,
        composite,
        all_passed,
    })
}

fn evaluate_node(node: &Node, ri: &RiTable) -> Result<NodeEvaluation, AhpError> {
    let (weights, consistency) = match (&node.matrix, node.children.len()) {
        (Some(m), _) => {
            let w = geometric_mean_weights(m);
            let report = consistency_report_with_weights(m, &w, ri)?;
            (w, report)
        }
        (None, 1) => (WeightVector::unit(), ConsistencyReport::trivial()),
        (None, _) => return Err(AhpError::MissingMatrix(node.id.clone())),
    };
    Ok(NodeEvaluation {
        node_id: node.id.clone(),
        label: node.label.clone(),
        child_ids: node.children.iter().map(|c| c.id.clone()).collect(),
        weights,
        consistency,
    })
}

/// The composite table of an evaluation.
pub fn rank(result: &EvaluationResult) -> CompositeWeightTable {
    result.composite.clone()
}

/// Multiply local weights along each root-to-leaf path and sort.
pub(crate) fn compose(hierarchy: &Hierarchy, local: &HashMap<String, f64>) -> CompositeWeightTable {
    let mut rows = Vec::new();
    let mut stack: Vec<(&Node, f64)> = vec![(hierarchy.root(), 1.0)];
    while let Some((node, acc)) = stack.pop() {
        for child in node.children.iter().rev() {
            let w = local.get(&child.id).copied().unwrap_or(0.0);
            let global = acc * w;
            if child.is_leaf() {
                rows.push(CompositeRow {
                    leaf_id: child.id.clone(),
                    label: child.label.clone(),
                    parent_id: node.id.clone(),
                    local_weight: w,
                    global_weight: global,
                });
            } else {
                stack.push((child, global));
            }
        }
    }
    rows.sort_by(|a, b| {
        b.global_weight
            .partial_cmp(&a.global_weight)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.leaf_id.cmp(&b.leaf_id))
    });
    CompositeWeightTable { rows }
}
