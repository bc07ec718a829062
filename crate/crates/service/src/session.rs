//! Elicitation sessions: a project skeleton plus the pairwise judgments
//! entered so far by each expert.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ahp_core::io::ProjectDocument;
use ahp_core::{
    aggregate_judgments, consistency_report_with_weights, geometric_mean_weights,
    inconsistency_hotspots, saaty_scale, AggregationMethod, AhpError, ConsistencyReport,
    EvaluationResult, Hierarchy, Hotspot, JudgmentMatrix, RiTable, ScaleMode,
};
use serde::{Deserialize, Serialize};

use crate::error::{MissingPairs, ServiceError};

/// Hotspots returned with each completed node.
pub const HOTSPOT_COUNT: usize = 3;

/// Relative distance within which a submitted number snaps to a scale value.
pub const SNAP_TOLERANCE: f64 = 1e-6;

/// Which judgment values a session accepts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleKind {
    /// The 17 discrete values `1/9, ..., 1/2, 1, 2, ..., 9`.
    #[default]
    Saaty,
    /// Any real value in `[1/9, 9]`.
    Continuous,
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleKind::Saaty => "saaty",
            ScaleKind::Continuous => "continuous",
        })
    }
}

impl FromStr for ScaleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "saaty" => Ok(ScaleKind::Saaty),
            "continuous" => Ok(ScaleKind::Continuous),
            other => Err(format!("unknown scale {other:?}")),
        }
    }
}

/// A judgment as sent by a client: a number or a fraction such as `"1/3"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JudgmentValue {
    Number(f64),
    Text(String),
}

impl fmt::Display for JudgmentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JudgmentValue::Number(x) => write!(f, "{x}"),
            JudgmentValue::Text(s) => write!(f, "{s:?}"),
        }
    }
}

impl JudgmentValue {
    fn raw(&self) -> Option<f64> {
        match self {
            JudgmentValue::Number(x) => Some(*x),
            JudgmentValue::Text(s) => match s.split_once('/') {
                Some((num, den)) => {
                    let num: f64 = num.trim().parse().ok()?;
                    let den: f64 = den.trim().parse().ok()?;
                    Some(num / den)
                }
                None => s.trim().parse().ok(),
            },
        }
    }

    /// The stored value, or `ScaleOutOfRange` if `scale` does not allow it.
    pub fn resolve(&self, scale: ScaleKind) -> Result<f64, ServiceError> {
        let out_of_range = || ServiceError::ScaleOutOfRange {
            value: self.to_string(),
            scale,
        };
        let x = self
            .raw()
            .filter(|x| x.is_finite() && *x > 0.0)
            .ok_or_else(out_of_range)?;
        match scale {
            ScaleKind::Saaty => saaty_scale()
                .into_iter()
                .find(|s| (x - s).abs() <= SNAP_TOLERANCE * s)
                .ok_or_else(out_of_range),
            ScaleKind::Continuous => {
                let slack = 1e-12;
                if x >= 1.0 / 9.0 - slack && x <= 9.0 + slack {
                    Ok(x)
                } else {
                    Err(out_of_range())
                }
            }
        }
    }
}

/// Body of `PUT /sessions/{id}/judgments`. Indices are 0-based positions in
/// the node's child list.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Submission {
    pub expert: String,
    pub node: String,
    pub i: usize,
    pub j: usize,
    pub value: JudgmentValue,
    /// Revision the client last saw; omitted means "don't check".
    #[serde(default)]
    pub revision: Option<u64>,
}

/// One stored upper-triangle judgment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Judgment {
    pub expert: String,
    pub node: String,
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// Persisted form of a session. The evaluation cache is not persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub session_id: String,
    pub revision: u64,
    #[serde(default)]
    pub scale: ScaleKind,
    pub project: ProjectDocument,
    pub judgments: Vec<Judgment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeStatus {
    Incomplete,
    /// Every pair is present but there is nothing to test (one child).
    Complete,
    Consistent,
    Inconsistent,
}

impl NodeStatus {
    fn from_report(report: &ConsistencyReport) -> Self {
        if report.passed {
            NodeStatus::Consistent
        } else {
            NodeStatus::Inconsistent
        }
    }
}

/// Where one expert stands on one node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Progress {
    pub status: NodeStatus,
    pub pairs_entered: usize,
    pub pairs_required: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency: Option<ConsistencyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hotspots: Vec<Hotspot>,
}

/// Response to an accepted judgment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Feedback {
    pub revision: u64,
    pub expert: String,
    pub node: String,
    #[serde(flatten)]
    pub progress: Progress,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeView {
    pub id: String,
    pub label: String,
    pub children: Vec<String>,
    pub pairs_required: usize,
    pub status: NodeStatus,
    pub experts: BTreeMap<String, Progress>,
}

/// Body of `GET /sessions/{id}`.
#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub session_id: String,
    pub revision: u64,
    pub scale: ScaleKind,
    pub evaluated_revision: Option<u64>,
    pub experts: Vec<String>,
    pub nodes: Vec<NodeView>,
    pub judgments: Vec<Judgment>,
    pub project: ProjectDocument,
}

type Pairs = BTreeMap<(usize, usize), f64>;

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    project: ProjectDocument,
    skeleton: Hierarchy,
    scale: ScaleKind,
    /// Keyed by (expert, node); pairs in row-major order.
    judgments: BTreeMap<(String, String), Pairs>,
    revision: u64,
    evaluation: Option<(u64, Arc<EvaluationResult>)>,
}

fn pair_count(order: usize) -> usize {
    order * order.saturating_sub(1) / 2
}

impl Session {
    /// A fresh session at revision 0. Matrices already in the project are
    /// validated but not required.
    pub fn create(
        id: String,
        project: ProjectDocument,
        scale: ScaleKind,
    ) -> Result<Self, ServiceError> {
        let skeleton = project.skeleton().map_err(ServiceError::InvalidProject)?;
        for (_, outcome) in project.validate_matrices() {
            outcome.map_err(ServiceError::InvalidProject)?;
        }
        Ok(Self {
            id,
            project,
            skeleton,
            scale,
            judgments: BTreeMap::new(),
            revision: 0,
            evaluation: None,
        })
    }

    pub fn from_record(record: SessionRecord) -> Result<Self, ServiceError> {
        let mut session = Self::create(record.session_id, record.project, record.scale)?;
        for j in record.judgments {
            session.check_pair(&j.node, j.i, j.j)?;
            session
                .judgments
                .entry((j.expert, j.node))
                .or_default()
                .insert((j.i, j.j), j.value);
        }
        session.revision = record.revision;
        Ok(session)
    }

    pub fn to_record(&self) -> SessionRecord {
        SessionRecord {
            session_id: self.id.clone(),
            revision: self.revision,
            scale: self.scale,
            project: self.project.clone(),
            judgments: self.judgment_list(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn scale(&self) -> ScaleKind {
        self.scale
    }

    pub fn project(&self) -> &ProjectDocument {
        &self.project
    }

    /// Experts with at least one stored judgment.
    pub fn experts(&self) -> BTreeSet<&str> {
        self.judgments
            .iter()
            .filter(|(_, pairs)| !pairs.is_empty())
            .map(|((expert, _), _)| expert.as_str())
            .collect()
    }

    fn judgment_list(&self) -> Vec<Judgment> {
        self.judgments
            .iter()
            .flat_map(|((expert, node), pairs)| {
                pairs.iter().map(move |(&(i, j), &value)| Judgment {
                    expert: expert.clone(),
                    node: node.clone(),
                    i,
                    j,
                    value,
                })
            })
            .collect()
    }

    fn node_order(&self, node: &str) -> Result<usize, ServiceError> {
        self.skeleton
            .find(node)
            .map(|n| n.children.len())
            .ok_or_else(|| ServiceError::UnknownNode(node.to_string()))
    }

    fn check_pair(&self, node: &str, i: usize, j: usize) -> Result<(), ServiceError> {
        let order = self.node_order(node)?;
        if i < j && j < order {
            Ok(())
        } else {
            Err(ServiceError::BadPair { i, j, order })
        }
    }

    /// Store one judgment and bump the revision.
    ///
    /// Checks run in this order: node, pair, value, revision.
    pub fn submit(&mut self, s: Submission, ri: &RiTable) -> Result<Feedback, ServiceError> {
        self.check_pair(&s.node, s.i, s.j)?;
        let value = s.value.resolve(self.scale)?;
        if let Some(supplied) = s.revision {
            if supplied != self.revision {
                return Err(ServiceError::StaleRevision {
                    supplied,
                    current: self.revision,
                });
            }
        }
        self.judgments
            .entry((s.expert.clone(), s.node.clone()))
            .or_default()
            .insert((s.i, s.j), value);
        self.revision += 1;
        let progress = self.progress(&s.expert, &s.node, ri)?;
        Ok(Feedback {
            revision: self.revision,
            expert: s.expert,
            node: s.node,
            progress,
        })
    }

    fn pairs(&self, expert: &str, node: &str) -> Option<&Pairs> {
        self.judgments.get(&(expert.to_string(), node.to_string()))
    }

    fn missing_pairs(&self, expert: &str, node: &str, order: usize) -> Vec<[usize; 2]> {
        let pairs = self.pairs(expert, node);
        (0..order)
            .flat_map(|i| ((i + 1)..order).map(move |j| (i, j)))
            .filter(|key| !pairs.is_some_and(|p| p.contains_key(key)))
            .map(|(i, j)| [i, j])
            .collect()
    }

    /// The expert's full matrix for `node`, once every pair is present.
    pub fn expert_matrix(
        &self,
        expert: &str,
        node: &str,
    ) -> Result<Option<JudgmentMatrix>, ServiceError> {
        let order = self.node_order(node)?;
        let upper: Vec<f64> = self
            .pairs(expert, node)
            .map(|p| p.values().copied().collect())
            .unwrap_or_default();
        if upper.len() < pair_count(order) {
            return Ok(None);
        }
        JudgmentMatrix::from_upper_triangle(order, &upper, ScaleMode::StrictScale)
            .map(Some)
            .map_err(ServiceError::Evaluation)
    }

    pub fn progress(
        &self,
        expert: &str,
        node: &str,
        ri: &RiTable,
    ) -> Result<Progress, ServiceError> {
        let order = self.node_order(node)?;
        let required = pair_count(order);
        let entered = self.pairs(expert, node).map_or(0, BTreeMap::len);
        let mut progress = Progress {
            status: NodeStatus::Incomplete,
            pairs_entered: entered,
            pairs_required: required,
            consistency: None,
            weights: None,
            hotspots: Vec::new(),
        };
        if required == 0 {
            progress.status = NodeStatus::Complete;
        } else if let Some(matrix) = self.expert_matrix(expert, node)? {
            let weights = geometric_mean_weights(&matrix);
            let report = consistency_report_with_weights(&matrix, &weights, ri)
                .map_err(ServiceError::Evaluation)?;
            progress.hotspots = inconsistency_hotspots(&matrix, &weights, HOTSPOT_COUNT)
                .map_err(ServiceError::Evaluation)?;
            progress.status = NodeStatus::from_report(&report);
            progress.consistency = Some(report);
            progress.weights = Some(weights.weights);
        }
        Ok(progress)
    }

    pub fn view(&self, ri: &RiTable) -> Result<SessionView, ServiceError> {
        let experts = self.experts();
        let mut nodes = Vec::new();
        for node in self.skeleton.internal_nodes() {
            let order = node.children.len();
            let mut per_expert = BTreeMap::new();
            for &expert in &experts {
                per_expert.insert(expert.to_string(), self.progress(expert, &node.id, ri)?);
            }
            let status = if order < 2 {
                NodeStatus::Complete
            } else if per_expert.is_empty() {
                self.project_status(&node.id, ri)
            } else if per_expert
                .values()
                .any(|p| p.status == NodeStatus::Incomplete)
            {
                NodeStatus::Incomplete
            } else if per_expert
                .values()
                .all(|p| p.status == NodeStatus::Consistent)
            {
                NodeStatus::Consistent
            } else {
                NodeStatus::Inconsistent
            };
            nodes.push(NodeView {
                id: node.id.clone(),
                label: node.label.clone(),
                children: node.children.iter().map(|c| c.id.clone()).collect(),
                pairs_required: pair_count(order),
                status,
                experts: per_expert,
            });
        }
        Ok(SessionView {
            session_id: self.id.clone(),
            revision: self.revision,
            scale: self.scale,
            evaluated_revision: self.evaluation.as_ref().map(|(r, _)| *r),
            experts: experts.into_iter().map(String::from).collect(),
            nodes,
            judgments: self.judgment_list(),
            project: self.project.clone(),
        })
    }

    /// Status of a node judged only by the project's own matrix.
    fn project_status(&self, node: &str, ri: &RiTable) -> NodeStatus {
        self.project
            .matrices
            .get(node)
            .and_then(|rows| self.project.matrix(rows).ok())
            .and_then(|m| ahp_core::consistency_report(&m, ri).ok())
            .map_or(NodeStatus::Incomplete, |r| NodeStatus::from_report(&r))
    }

    /// The hierarchy to evaluate at the current revision.
    ///
    /// With no expert judgments, the project's own matrices are used.
    /// Otherwise every participating expert must have completed every node
    /// with two or more children, and their matrices are aggregated per node.
    pub fn hierarchy_for_evaluation(
        &self,
        method: AggregationMethod,
    ) -> Result<Hierarchy, ServiceError> {
        let experts = self.experts();
        let multi_child: Vec<(&str, usize)> = self
            .skeleton
            .internal_nodes()
            .filter(|n| n.children.len() >= 2)
            .map(|n| (n.id.as_str(), n.children.len()))
            .collect();

        if experts.is_empty() {
            let hierarchy = self
                .project
                .to_hierarchy(method)
                .map_err(ServiceError::InvalidProject)?;
            let missing: Vec<MissingPairs> = multi_child
                .iter()
                .filter(|(id, _)| hierarchy.find(id).is_some_and(|n| n.matrix.is_none()))
                .map(|&(id, order)| MissingPairs {
                    expert: None,
                    node: id.to_string(),
                    pairs: self.missing_pairs("", id, order),
                })
                .collect();
            return if missing.is_empty() {
                Ok(hierarchy)
            } else {
                Err(ServiceError::IncompleteNode(missing))
            };
        }

        let mut missing = Vec::new();
        for &(node, order) in &multi_child {
            for &expert in &experts {
                let pairs = self.missing_pairs(expert, node, order);
                if !pairs.is_empty() {
                    missing.push(MissingPairs {
                        expert: Some(expert.to_string()),
                        node: node.to_string(),
                        pairs,
                    });
                }
            }
        }
        if !missing.is_empty() {
            return Err(ServiceError::IncompleteNode(missing));
        }

        let mut hierarchy = self.skeleton.clone();
        for &(node, _) in &multi_child {
            let mut matrices = Vec::with_capacity(experts.len());
            for &expert in &experts {
                matrices.extend(self.expert_matrix(expert, node)?);
            }
            let combined =
                aggregate_judgments(&matrices, method).map_err(|source| match source {
                    AhpError::ReciprocityViolation { .. } => ServiceError::ReciprocityViolation {
                        node: node.to_string(),
                        source,
                    },
                    other => ServiceError::Evaluation(other),
                })?;
            hierarchy = hierarchy
                .attach_matrix(node, combined)
                .map_err(ServiceError::Evaluation)?;
        }
        Ok(hierarchy)
    }

    /// The cached evaluation, if it was computed at the current revision.
    pub fn evaluation(&self) -> Result<Arc<EvaluationResult>, ServiceError> {
        match &self.evaluation {
            Some((revision, result)) if *revision == self.revision => Ok(Arc::clone(result)),
            _ => Err(ServiceError::NoEvaluation(self.revision)),
        }
    }

    /// Cache `result` if it was computed at the current revision.
    pub fn store_evaluation(&mut self, revision: u64, result: Arc<EvaluationResult>) {
        if revision == self.revision {
            self.evaluation = Some((revision, result));
        }
    }
}
