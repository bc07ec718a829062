use ahp_core::io::ProjectError;
use ahp_core::AhpError;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::session::ScaleKind;
use crate::store::StoreError;

/// Judgments still needed from one expert for one node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissingPairs {
    /// `None` when the node has no expert judgments and no project matrix.
    pub expert: Option<String>,
    pub node: String,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("unknown session {0:?}")]
    UnknownSession(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("({i}, {j}) is not a pair i < j of a node with {order} children")]
    BadPair { i: usize, j: usize, order: usize },
    #[error("judgment value {value} is not allowed on the {scale} scale")]
    ScaleOutOfRange { value: String, scale: ScaleKind },
    #[error("weight {0} is outside the open interval (0, 1)")]
    WeightOutOfRange(f64),
    #[error("cannot perturb node: {0}")]
    InvalidTarget(AhpError),
    #[error("revision {supplied} is stale; the session is at revision {current}")]
    StaleRevision { supplied: u64, current: u64 },
    #[error("no evaluation at revision {0}; evaluate first")]
    NoEvaluation(u64),
    #[error("invalid project: {0}")]
    InvalidProject(ProjectError),
    #[error("{} node/expert combination(s) have missing judgments", .0.len())]
    IncompleteNode(Vec<MissingPairs>),
    #[error("aggregated matrix for node {node:?} is not reciprocal: {source}")]
    ReciprocityViolation { node: String, source: AhpError },
    #[error("malformed request: {0}")]
    BadRequest(String),
    #[error("route not found")]
    NotFound,
    #[error("evaluation failed: {0}")]
    Evaluation(AhpError),
    #[error(transparent)]
    Storage(#[from] StoreError),
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::UnknownSession(_) => "UnknownSession",
            ServiceError::UnknownNode(_) => "UnknownNode",
            ServiceError::BadPair { .. } => "BadPair",
            ServiceError::ScaleOutOfRange { .. } => "ScaleOutOfRange",
            ServiceError::WeightOutOfRange(_) => "WeightOutOfRange",
            ServiceError::InvalidTarget(_) => "InvalidTarget",
            ServiceError::StaleRevision { .. } => "StaleRevision",
            ServiceError::NoEvaluation(_) => "NoEvaluation",
            ServiceError::InvalidProject(_) => "InvalidProject",
            ServiceError::IncompleteNode(_) => "IncompleteNode",
            ServiceError::ReciprocityViolation { .. } => "ReciprocityViolation",
            ServiceError::BadRequest(_) => "BadRequest",
            ServiceError::NotFound => "NotFound",
            ServiceError::Evaluation(_) => "EvaluationFailed",
            ServiceError::Storage(_) => "StorageError",
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::BadPair { .. }
            | ServiceError::ScaleOutOfRange { .. }
            | ServiceError::WeightOutOfRange(_)
            | ServiceError::InvalidTarget(_)
            | ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::UnknownSession(_)
            | ServiceError::UnknownNode(_)
            | ServiceError::NotFound => StatusCode::NOT_FOUND,
            ServiceError::StaleRevision { .. } | ServiceError::NoEvaluation(_) => {
                StatusCode::CONFLICT
            }
            ServiceError::InvalidProject(_)
            | ServiceError::IncompleteNode(_)
            | ServiceError::ReciprocityViolation { .. }
            | ServiceError::Evaluation(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    pub fn details(&self) -> Value {
        match self {
            ServiceError::UnknownSession(id) => json!({ "session_id": id }),
            ServiceError::UnknownNode(id) => json!({ "node": id }),
            ServiceError::BadPair { i, j, order } => json!({ "i": i, "j": j, "order": order }),
            ServiceError::ScaleOutOfRange { value, scale } => {
                json!({ "value": value, "scale": scale })
            }
            ServiceError::WeightOutOfRange(w) => json!({ "weight": w }),
            ServiceError::StaleRevision { supplied, current } => {
                json!({ "supplied": supplied, "current": current })
            }
            ServiceError::NoEvaluation(revision) => json!({ "revision": revision }),
            ServiceError::InvalidProject(e) => json!({ "line": e.line() }),
            ServiceError::IncompleteNode(missing) => json!({ "missing": missing }),
            ServiceError::ReciprocityViolation { node, .. } => json!({ "node": node }),
            _ => Value::Null,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = json!({
            "code": self.code(),
            "message": self.to_string(),
            "details": self.details(),
        });
        (self.status(), Json(body)).into_response()
    }
}
