#![allow(dead_code)]

use ahp_service::{router, AppState};
use axum::body::Body;
use axum::http::{HeaderMap, Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

pub struct Reply {
    pub status: StatusCode,
    pub headers: HeaderMap,
    pub text: String,
}

impl Reply {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.text).unwrap_or_else(|e| panic!("{e}: {}", self.text))
    }

    pub fn code(&self) -> String {
        self.json()["code"].as_str().unwrap_or_default().to_string()
    }
}

#[derive(Clone)]
pub struct Client {
    app: Router,
}

impl Client {
    pub fn new(state: AppState) -> Self {
        Self {
            app: router(state, None),
        }
    }

    pub fn with_router(app: Router) -> Self {
        Self { app }
    }

    pub async fn send(&self, method: Method, uri: &str, body: impl Into<String>) -> Reply {
        let request = Request::builder()
            .method(method)
            .uri(uri)
            .header("content-type", "application/json")
            .body(Body::from(body.into()))
            .unwrap();
        let response = self.app.clone().oneshot(request).await.unwrap();
        let status = response.status();
        let headers = response.headers().clone();
        let bytes = response.into_body().collect().await.unwrap().to_bytes();
        Reply {
            status,
            headers,
            text: String::from_utf8(bytes.to_vec()).unwrap(),
        }
    }

    pub async fn get(&self, uri: &str) -> Reply {
        self.send(Method::GET, uri, "").await
    }

    pub async fn post(&self, uri: &str, body: impl Into<String>) -> Reply {
        self.send(Method::POST, uri, body).await
    }

    pub async fn put(&self, uri: &str, body: impl Into<String>) -> Reply {
        self.send(Method::PUT, uri, body).await
    }

    /// Create a session and return its id.
    pub async fn create(&self, project: &str, scale: Option<&str>) -> String {
        let uri = match scale {
            Some(s) => format!("/api/v1/sessions?scale={s}"),
            None => "/api/v1/sessions".to_string(),
        };
        let reply = self.post(&uri, project).await;
        assert_eq!(reply.status, StatusCode::CREATED, "{}", reply.text);
        reply.json()["session_id"].as_str().unwrap().to_string()
    }

    pub async fn judge(
        &self,
        session: &str,
        expert: &str,
        node: &str,
        i: usize,
        j: usize,
        value: Value,
    ) -> Reply {
        let body =
            serde_json::json!({ "expert": expert, "node": node, "i": i, "j": j, "value": value });
        self.put(
            &format!("/api/v1/sessions/{session}/judgments"),
            body.to_string(),
        )
        .await
    }

    /// Enter every upper-triangle entry of `rows` for one expert.
    pub async fn judge_matrix(
        &self,
        session: &str,
        expert: &str,
        node: &str,
        rows: &[Vec<f64>],
    ) -> Reply {
        let mut last = None;
        for (i, row) in rows.iter().enumerate() {
            for (j, &value) in row.iter().enumerate().skip(i + 1) {
                let reply = self.judge(session, expert, node, i, j, value.into()).await;
                assert_eq!(reply.status, StatusCode::OK, "{}", reply.text);
                last = Some(reply);
            }
        }
        last.expect("matrix has at least one pair")
    }

    pub async fn evaluate(&self, session: &str, method: &str) -> Reply {
        self.post(
            &format!("/api/v1/sessions/{session}/evaluate"),
            serde_json::json!({ "method": method }).to_string(),
        )
        .await
    }
}

/// A goal with three leaves `x`, `y`, `z`.
pub fn triad_project() -> String {
    serde_json::json!({
        "version": "1.0",
        "hierarchy": {
            "levels": ["Goal", "Option"],
            "root": { "id": "G", "label": "goal", "children": [
                { "id": "x", "label": "X" },
                { "id": "y", "label": "Y" },
                { "id": "z", "label": "Z" }
            ]}
        }
    })
    .to_string()
}
