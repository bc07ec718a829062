//! HTTP service for interactive pairwise-judgment elicitation.
//!
//! Sessions hold a project hierarchy and the judgments experts have entered
//! so far. Every endpoint lives under `/api/v1`:
//!
//! | method | path | body | response |
//! |---|---|---|---|
//! | POST | `/sessions?scale=saaty\|continuous` | project document | `{session_id}` |
//! | GET | `/sessions/{id}` | | session state |
//! | PUT | `/sessions/{id}/judgments` | `{expert, node, i, j, value, revision?}` | feedback |
//! | POST | `/sessions/{id}/evaluate` | `{method?}` | evaluation result |
//! | POST | `/sessions/{id}/what-if` | `{node, weight}` | ranking |
//! | GET | `/sessions/{id}/report?format=csv\|text` | | report text |
//!
//! `GET /healthz` answers 200. Errors are JSON `{code, message, details}`.

pub mod error;
pub mod routes;
pub mod session;
pub mod state;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;

use ahp_core::RiTable;
use thiserror::Error;

pub use error::{MissingPairs, ServiceError};
pub use routes::{router, REVISION_HEADER};
pub use session::{
    Feedback, JudgmentValue, NodeStatus, ScaleKind, Session, SessionRecord, Submission,
};
pub use state::AppState;
pub use store::{FileStore, MemoryStore, SessionStore, StoreError};

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub addr: SocketAddr,
    /// Session snapshots go here; `None` keeps sessions in memory only.
    pub data_dir: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
    pub ri: RiTable,
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error("cannot start server on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        source: std::io::Error,
    },
    #[error("server failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot load sessions: {0}")]
    Load(#[from] ServiceError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

pub fn app_state(config: &ServeConfig) -> Result<AppState, ServeError> {
    Ok(match &config.data_dir {
        Some(dir) => AppState::new(FileStore::open(dir)?, config.ri.clone())?,
        None => AppState::new(MemoryStore::new(), config.ri.clone())?,
    })
}

/// Run the server until Ctrl-C. `on_ready` receives the bound address.
pub fn serve_blocking(
    config: ServeConfig,
    on_ready: impl FnOnce(SocketAddr),
) -> Result<(), ServeError> {
    let state = app_state(&config)?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(config.addr)
            .await
            .map_err(|source| ServeError::Bind {
                addr: config.addr,
                source,
            })?;
        on_ready(listener.local_addr()?);
        let app = router(state, config.static_dir);
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
