//! Project files, shipped fixtures and report export.

pub mod canonical;
mod project;
mod report;

pub use project::{
    parse_project, serialize_project, HierarchySpec, MatrixRows, NodeSpec, ProjectDocument,
    ProjectError, FORMAT_VERSION,
};
pub use report::{
    consistency_line, export_report, export_report_with_precision, fixed, ranking_lines,
    status_word, ReportFormat, CONSISTENCY_COLUMNS, DEFAULT_PRECISION, RANKING_COLUMNS,
};
