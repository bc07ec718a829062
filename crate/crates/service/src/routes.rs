use std::collections::HashMap;
use std::path::PathBuf;

use ahp_core::io::{parse_project, ReportFormat};
use ahp_core::AggregationMethod;
use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;
use tower_http::services::ServeDir;

use crate::error::ServiceError;
use crate::session::{ScaleKind, Submission};
use crate::state::AppState;

/// Response header carrying the revision an evaluation belongs to.
pub const REVISION_HEADER: &str = "x-ahp-revision";

const PLACEHOLDER_PAGE: &str = "<!doctype html>\n<html><head><title>AHP elicitation service</title></head>\
<body><h1>AHP elicitation service</h1><p>The API is served under <code>/api/v1</code>. \
Start the server with <code>--static-dir</code> to serve a browser client here.</p></body></html>\n";

type ApiResult<T> = Result<T, ServiceError>;

/// Build the router. `static_dir`, when given, is served at `/`.
pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/judgments", put(submit_judgment))
        .route("/sessions/{id}/evaluate", post(evaluate))
        .route("/sessions/{id}/what-if", post(what_if))
        .route("/sessions/{id}/report", get(report))
        .fallback(not_found);

    let app = Router::new()
        .nest("/api/v1", api)
        .route("/healthz", get(healthz));
    let app = match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir).fallback(get(not_found))),
        None => app.route("/", get(placeholder)).fallback(not_found),
    };
    app.with_state(state)
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> ApiResult<T> + Send + 'static,
) -> ApiResult<T> {
    tokio::task::spawn_blocking(f)
        .await
        .expect("request handler panicked")
}

fn parse_body<T: DeserializeOwned>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

fn query_param<T>(query: &HashMap<String, String>, key: &str) -> ApiResult<Option<T>>
where
    T: std::str::FromStr<Err = String>,
{
    query
        .get(key)
        .map(|v| v.parse().map_err(ServiceError::BadRequest))
        .transpose()
}

async fn healthz() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn placeholder() -> Html<&'static str> {
    Html(PLACEHOLDER_PAGE)
}

async fn not_found() -> ServiceError {
    ServiceError::NotFound
}

async fn create_session(
    State(state): State<AppState>,
    Query(query): Query<HashMap<String, String>>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<serde_json::Value>)> {
    let scale: ScaleKind = query_param(&query, "scale")?.unwrap_or_default();
    let text = std::str::from_utf8(&body)
        .map_err(|e| ServiceError::BadRequest(format!("body is not UTF-8: {e}")))?
        .to_string();
    let project = parse_project(&text).map_err(ServiceError::InvalidProject)?;
    let id = blocking(move || state.create_session(project, scale)).await?;
    Ok((StatusCode::CREATED, Json(json!({ "session_id": id }))))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Response> {
    let view = blocking(move || state.view(&id)).await?;
    Ok(Json(view).into_response())
}

async fn submit_judgment(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Response> {
    let submission: Submission = parse_body(&body)?;
    let feedback = blocking(move || state.submit(&id, submission)).await?;
    Ok(Json(feedback).into_response())
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateRequest {
    #[serde(default)]
    method: Option<String>,
}

async fn evaluate(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Response> {
    let request: EvaluateRequest = if body.iter().all(u8::is_ascii_whitespace) {
        EvaluateRequest::default()
    } else {
        parse_body(&body)?
    };
    let method: AggregationMethod = match request.method {
        Some(name) => name.parse().map_err(ServiceError::BadRequest)?,
        None => AggregationMethod::default(),
    };
    let (revision, result) = blocking(move || state.evaluate(&id, method)).await?;
    let json = serde_json::to_string(&*result).expect("evaluation results are plain data");
    Ok((
        [
            (header::CONTENT_TYPE, "application/json".to_string()),
            (
                header::HeaderName::from_static(REVISION_HEADER),
                revision.to_string(),
            ),
        ],
        json,
    )
        .into_response())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WhatIfRequest {
    node: String,
    weight: f64,
}

async fn what_if(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Response> {
    let request: WhatIfRequest = parse_body(&body)?;
    let table = blocking(move || state.what_if(&id, &request.node, request.weight)).await?;
    Ok(Json(table).into_response())
}

async fn report(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> ApiResult<Response> {
    let format: ReportFormat = query_param(&query, "format")?.unwrap_or(ReportFormat::Csv);
    let text = blocking(move || state.report(&id, format)).await?;
    let content_type = match format {
        ReportFormat::Csv => "text/csv; charset=utf-8",
        ReportFormat::Text => "text/plain; charset=utf-8",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], text).into_response())
}
