use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aggregate::{aggregate_judgments, AggregationMethod};
use crate::error::AhpError;
use crate::io::canonical::to_canonical_string;
use crate::matrix::{JudgmentMatrix, Reciprocity, ScaleMode};
use crate::model::{Hierarchy, Node};

/// The only project format version this crate reads and writes.
pub const FORMAT_VERSION: &str = "1.0";

/// Row-major judgment matrix as stored on disk.
pub type MatrixRows = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0:?} (expected {FORMAT_VERSION:?})")]
    VersionUnsupported(String),
    #[error("duplicate node id {id:?} at line {line}")]
    DuplicateNodeId { id: String, line: usize },
    #[error("{section} references unknown node {id:?} at line {line}")]
    UnknownNodeReference {
        section: String,
        id: String,
        line: usize,
    },
    #[error("invalid hierarchy: {0}")]
    Hierarchy(AhpError),
    #[error("matrix for node {node}: {source}")]
    Matrix { node: String, source: AhpError },
}

impl ProjectError {
    /// 1-based source line the error points at, when it has one.
    pub fn line(&self) -> Option<usize> {
        match self {
            ProjectError::Syntax { line, .. }
            | ProjectError::DuplicateNodeId { line, .. }
            | ProjectError::UnknownNodeReference { line, .. } => Some(*line),
            _ => None,
        }
    }

    /// Whether the document failed to parse, as opposed to failing numeric
    /// or structural validation after parsing.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            ProjectError::Syntax { .. }
                | ProjectError::VersionUnsupported(_)
                | ProjectError::DuplicateNodeId { .. }
                | ProjectError::UnknownNodeReference { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub id: String,
    #[serde(default)]
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NodeSpec>,
}

impl NodeSpec {
    fn walk<'a>(&'a self, out: &mut Vec<&'a NodeSpec>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }

    fn to_node(&self) -> Node {
        Node::internal(
            self.id.clone(),
            self.label.clone(),
            self.children.iter().map(NodeSpec::to_node).collect(),
        )
    }

    fn from_node(node: &Node) -> Self {
        Self {
            id: node.id.clone(),
            label: node.label.clone(),
            children: node.children.iter().map(NodeSpec::from_node).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchySpec {
    #[serde(default)]
    pub levels: Vec<String>,
    pub root: NodeSpec,
}

impl HierarchySpec {
    /// All nodes in pre-order.
    pub fn nodes(&self) -> Vec<&NodeSpec> {
        let mut out = Vec::new();
        self.root.walk(&mut out);
        out
    }
}

/// A project file: hierarchy, judgment matrices and metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectDocument {
    pub version: String,
    /// Reciprocity tolerance applied to the stored matrices.
    #[serde(default)]
    pub tolerance: Reciprocity,
    pub hierarchy: HierarchySpec,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixRows>,
    /// Per-expert matrices, combined when a node has no entry in `matrices`.
    #[serde(default)]
    pub experts: BTreeMap<String, BTreeMap<String, MatrixRows>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl ProjectDocument {
    /// A document for `hierarchy` carrying its attached matrices.
    pub fn from_hierarchy(hierarchy: &Hierarchy) -> Self {
        let matrices = hierarchy
            .nodes()
            .filter_map(|n| n.matrix.as_ref().map(|m| (n.id.clone(), m.to_rows())))
            .collect();
        let tolerance = hierarchy
            .nodes()
            .filter_map(|n| n.matrix.as_ref().map(JudgmentMatrix::reciprocity))
            .max()
            .unwrap_or_default();
        Self {
            version: FORMAT_VERSION.to_string(),
            tolerance,
            hierarchy: HierarchySpec {
                levels: hierarchy.levels().to_vec(),
                root: NodeSpec::from_node(hierarchy.root()),
            },
            matrices,
            experts: BTreeMap::new(),
            metadata: BTreeMap::new(),
        }
    }

    /// The same document with no judgment data.
    pub fn without_judgments(&self) -> Self {
        Self {
            matrices: BTreeMap::new(),
            experts: BTreeMap::new(),
            ..self.clone()
        }
    }

    /// The hierarchy tree without any matrices.
    pub fn skeleton(&self) -> Result<Hierarchy, ProjectError> {
        Hierarchy::new(self.hierarchy.root.to_node(), self.hierarchy.levels.clone())
            .map_err(ProjectError::Hierarchy)
    }

    /// Validate one stored matrix against the document tolerance.
    pub fn matrix(&self, rows: &MatrixRows) -> Result<JudgmentMatrix, AhpError> {
        JudgmentMatrix::new(rows, ScaleMode::ReciprocalOnly, self.tolerance)
    }

    /// Every stored matrix (direct and per-expert) with its validation outcome.
    pub fn validate_matrices(&self) -> Vec<(String, Result<JudgmentMatrix, ProjectError>)> {
        let skeleton = self.skeleton().ok();
        let check = |node: &str, rows: &MatrixRows| {
            let m = self.matrix(rows).map_err(|source| ProjectError::Matrix {
                node: node.to_string(),
                source,
            })?;
            if let Some(h) = &skeleton {
                h.attach_matrix(node, m.clone())
                    .map_err(|source| ProjectError::Matrix {
                        node: node.to_string(),
                        source,
                    })?;
            }
            Ok(m)
        };
        let mut out: Vec<_> = self
            .matrices
            .iter()
            .map(|(node, rows)| (node.clone(), check(node, rows)))
            .collect();
        for (expert, per_node) in &self.experts {
            for (node, rows) in per_node {
                out.push((format!("{expert}/{node}"), check(node, rows)));
            }
        }
        out
    }

    /// Build the hierarchy with matrices attached. Nodes without a direct
    /// matrix get the aggregate of the experts' matrices for that node.
    pub fn to_hierarchy(&self, method: AggregationMethod) -> Result<Hierarchy, ProjectError> {
        let mut hierarchy = self.skeleton()?;
        let wrap = |node: &str| {
            let node = node.to_string();
            move |source| ProjectError::Matrix { node, source }
        };
        let internal: Vec<String> = hierarchy.internal_nodes().map(|n| n.id.clone()).collect();
        for node in internal {
            let matrix = if let Some(rows) = self.matrices.get(&node) {
                Some(self.matrix(rows).map_err(wrap(&node))?)
            } else {
                let expert_matrices = self
                    .experts
                    .values()
                    .filter_map(|per_node| per_node.get(&node))
                    .map(|rows| self.matrix(rows))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(wrap(&node))?;
                if expert_matrices.is_empty() {
                    None
                } else {
                    Some(aggregate_judgments(&expert_matrices, method).map_err(wrap(&node))?)
                }
            };
            if let Some(m) = matrix {
                hierarchy = hierarchy.attach_matrix(&node, m).map_err(wrap(&node))?;
            }
        }
        Ok(hierarchy)
    }
}

/// Parse and structurally validate a project document.
///
/// Matrix contents are not checked here; see
/// [`ProjectDocument::validate_matrices`] and [`ProjectDocument::to_hierarchy`].
pub fn parse_project(text: &str) -> Result<ProjectDocument, ProjectError> {
    let doc: ProjectDocument = serde_json::from_str(text).map_err(|e| ProjectError::Syntax {
        line: e.line().max(1),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(ProjectError::VersionUnsupported(doc.version));
    }

    let mut ids = HashSet::new();
    for node in doc.hierarchy.nodes() {
        if !ids.insert(node.id.as_str()) {
            return Err(ProjectError::DuplicateNodeId {
                id: node.id.clone(),
                line: locate(text, &node.id, 2),
            });
        }
    }
    let unknown = |section: &str, id: &str| ProjectError::UnknownNodeReference {
        section: section.to_string(),
        id: id.to_string(),
        line: locate_key(text, id),
    };
    if let Some(id) = doc.matrices.keys().find(|k| !ids.contains(k.as_str())) {
        return Err(unknown("matrices", id));
    }
    for (expert, per_node) in &doc.experts {
        if let Some(id) = per_node.keys().find(|k| !ids.contains(k.as_str())) {
            return Err(unknown(&format!("experts.{expert}"), id));
        }
    }
    Ok(doc)
}

/// Canonical text of `doc`: sorted keys, decimal numbers, trailing newline.
pub fn serialize_project(doc: &ProjectDocument) -> String {
    let value = serde_json::to_value(doc).expect("project documents are plain data");
    to_canonical_string(&value)
}

/// Line of the `nth` occurrence of `"id"` in `text`, or 1.
fn locate(text: &str, id: &str, nth: usize) -> usize {
    let needle = format!("\"{id}\"");
    text.match_indices(&needle)
        .nth(nth.saturating_sub(1))
        .map(|(pos, _)| line_of(text, pos))
        .unwrap_or(1)
}

/// Line where `"id"` appears as an object key, or 1.
fn locate_key(text: &str, id: &str) -> usize {
    let needle = format!("\"{id}\"");
    text.match_indices(&needle)
        .find(|(pos, m)| text[pos + m.len()..].trim_start().starts_with(':'))
        .map(|(pos, _)| line_of(text, pos))
        .unwrap_or(1)
}

fn line_of(text: &str, pos: usize) -> usize {
    text[..pos].bytes().filter(|&b| b == b'\n').count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "version": "1.0",
  "hierarchy": {
    "root": {"id": "G", "label": "goal", "children": [
      {"id": "x", "label": "X"},
      {"id": "y", "label": "Y"}
    ]}
  },
  "matrices": {"G": [[1, 3], [0.3333333333, 1]]}
}"#;

    #[test]
    fn parses_minimal_document() {
        let doc = parse_project(SMALL).unwrap();
        assert_eq!(doc.tolerance, Reciprocity::Exact);
        assert!(doc.experts.is_empty());
        let h = doc.to_hierarchy(AggregationMethod::GeometricMean).unwrap();
        assert_eq!(h.leaves().count(), 2);
    }

    #[test]
    fn empty_input_is_a_syntax_error() {
        match parse_project("") {
            Err(ProjectError::Syntax { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let text = "{\n  \"version\": \"1.0\",\n  \"hierarchy\": ]\n}";
        match parse_project(text) {
            Err(ProjectError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_reference() {
        let text = SMALL.replace("\"matrices\": {\"G\"", "\"matrices\": {\"B9\"");
        match parse_project(&text) {
            Err(ProjectError::UnknownNodeReference { id, line, .. }) => {
                assert_eq!(id, "B9");
                assert_eq!(line, 9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_and_version() {
        let text = SMALL.replace("\"id\": \"y\"", "\"id\": \"x\"");
        assert!(matches!(
            parse_project(&text),
            Err(ProjectError::DuplicateNodeId { ref id, line: 6 }) if id == "x"
        ));
        let text = SMALL.replace("\"1.0\"", "\"2.0\"");
        assert_eq!(
            parse_project(&text),
            Err(ProjectError::VersionUnsupported("2.0".into()))
        );
    }

    #[test]
    fn experts_are_aggregated() {
        let text = SMALL.replace(
            "\"matrices\": {\"G\": [[1, 3], [0.3333333333, 1]]}",
            "\"experts\": {\"e1\": {\"G\": [[1, 4], [0.25, 1]]}, \"e2\": {\"G\": [[1, 1], [1, 1]]}}",
        );
        let doc = parse_project(&text).unwrap();
        let h = doc.to_hierarchy(AggregationMethod::GeometricMean).unwrap();
        let m = h.find("G").unwrap().matrix.as_ref().unwrap();
        assert!((m.get(0, 1) - 2.0).abs() < 1e-12);
        assert!(matches!(
            doc.to_hierarchy(AggregationMethod::ArithmeticMean),
            Err(ProjectError::Matrix {
                source: AhpError::ReciprocityViolation { .. },
                ..
            })
        ));
    }

    #[test]
    fn matrix_errors_carry_node() {
        let text = SMALL.replace("[0.3333333333, 1]", "[0.5, 1]");
        let doc = parse_project(&text).unwrap();
        let results = doc.validate_matrices();
        assert_eq!(results.len(), 1);
        assert!(matches!(&results[0].1, Err(ProjectError::Matrix { node, .. }) if node == "G"));
    }

    #[test]
    fn empty_sections_serialize() {
        let doc = parse_project(SMALL).unwrap().without_judgments();
        let text = serialize_project(&doc);
        assert!(text.contains("\"matrices\": {}"));
        assert!(text.ends_with("}\n"));
        assert_eq!(parse_project(&text).unwrap(), doc);
    }
}
