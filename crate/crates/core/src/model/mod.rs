//! Hierarchies of criteria and indicators, weight composition and ranking.

mod evaluate;
mod hierarchy;
mod sensitivity;

pub use evaluate::{
    evaluate, rank, CompositeRow, CompositeWeightTable, EvaluationResult, NodeEvaluation,
};
pub use hierarchy::{Hierarchy, Node};
pub use sensitivity::{inconsistency_hotspots, sensitivity, Hotspot};
