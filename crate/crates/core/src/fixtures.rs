//! Project files shipped with the crate.

use crate::io::{parse_project, ProjectDocument};

/// Production-efficiency index system of a cigarette enterprise: one goal,
/// six criteria, 23 indicators, with expert-averaged judgment matrices.
pub const CIGARETTE_EFFICIENCY: &str = include_str!("../fixtures/cigarette-efficiency.ahp.json");

/// The same study with the matrices exactly as transcribed, including two
/// entries that break reciprocity.
pub const CIGARETTE_EFFICIENCY_VERBATIM: &str =
    include_str!("../fixtures/cigarette-efficiency-verbatim.ahp.json");

pub fn cigarette_efficiency() -> ProjectDocument {
    parse_project(CIGARETTE_EFFICIENCY).expect("shipped fixture parses")
}
