//! Analytic hierarchy process engine.
//!
//! Judgment matrices are turned into local priorities with row geometric
//! means, checked for consistency against a random index, and composed
//! through a goal/criterion/indicator hierarchy into global weights.

pub mod aggregate;
pub mod consistency;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod model;
pub mod random_index;
pub mod weights;

pub use aggregate::{aggregate_judgments, AggregationMethod};
pub use consistency::{
    consistency_report, consistency_report_with_weights, ConsistencyReport, RiTable, CR_THRESHOLD,
};
pub use error::AhpError;
pub use matrix::{validate_matrix, JudgmentMatrix, Reciprocity, ScaleMode};
pub use model::{
    evaluate, inconsistency_hotspots, rank, sensitivity, CompositeRow, CompositeWeightTable,
    EvaluationResult, Hierarchy, Hotspot, Node, NodeEvaluation,
};
pub use random_index::{saaty_scale, simulate_ri, simulate_ri_table};
pub use weights::{geometric_mean_weights, max_eigenvalue, WeightVector};
