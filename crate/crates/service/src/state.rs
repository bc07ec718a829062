use std::collections::HashMap;
use std::sync::Arc;

use ahp_core::io::{export_report, ProjectDocument, ReportFormat};
use ahp_core::{
    evaluate, sensitivity, AggregationMethod, AhpError, CompositeWeightTable, EvaluationResult,
    RiTable,
};
use parking_lot::{Mutex, RwLock};

use crate::error::ServiceError;
use crate::session::{Feedback, ScaleKind, Session, SessionView, Submission};
use crate::store::{MemoryStore, SessionStore};

/// Shared service state. Cloning is cheap.
///
/// Each session sits behind its own mutex, so mutations of one session are
/// applied one at a time while different sessions proceed in parallel. A
/// mutation is committed only after its snapshot has been saved.
#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    store: Box<dyn SessionStore>,
    ri: RiTable,
}

impl AppState {
    /// Load every session already in `store`.
    pub fn new(store: impl SessionStore + 'static, ri: RiTable) -> Result<Self, ServiceError> {
        let mut sessions = HashMap::new();
        for record in store.load_all()? {
            let session = Session::from_record(record)?;
            sessions.insert(session.id().to_string(), Arc::new(Mutex::new(session)));
        }
        Ok(Self {
            inner: Arc::new(Inner {
                sessions: RwLock::new(sessions),
                store: Box::new(store),
                ri,
            }),
        })
    }

    /// In-memory sessions with the standard RI table.
    pub fn in_memory() -> Self {
        Self::new(MemoryStore::new(), RiTable::saaty()).expect("empty store loads")
    }

    pub fn ri_table(&self) -> &RiTable {
        &self.inner.ri
    }

    pub fn session_count(&self) -> usize {
        self.inner.sessions.read().len()
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.inner
            .sessions
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::UnknownSession(id.to_string()))
    }

    pub fn create_session(
        &self,
        project: ProjectDocument,
        scale: ScaleKind,
    ) -> Result<String, ServiceError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::create(id.clone(), project, scale)?;
        self.inner.store.save(&session.to_record())?;
        self.inner
            .sessions
            .write()
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(id)
    }

    pub fn view(&self, id: &str) -> Result<SessionView, ServiceError> {
        let session = self.session(id)?;
        let guard = session.lock();
        guard.view(&self.inner.ri)
    }

    pub fn submit(&self, id: &str, submission: Submission) -> Result<Feedback, ServiceError> {
        let session = self.session(id)?;
        let mut guard = session.lock();
        let mut next = guard.clone();
        let feedback = next.submit(submission, &self.inner.ri)?;
        self.inner.store.save(&next.to_record())?;
        *guard = next;
        Ok(feedback)
    }

    /// Aggregate and evaluate at the current revision, caching the result.
    /// Returns the revision the result belongs to.
    pub fn evaluate(
        &self,
        id: &str,
        method: AggregationMethod,
    ) -> Result<(u64, Arc<EvaluationResult>), ServiceError> {
        let session = self.session(id)?;
        let (revision, hierarchy) = {
            let guard = session.lock();
            (guard.revision(), guard.hierarchy_for_evaluation(method)?)
        };
        let result =
            Arc::new(evaluate(&hierarchy, &self.inner.ri).map_err(ServiceError::Evaluation)?);
        session
            .lock()
            .store_evaluation(revision, Arc::clone(&result));
        Ok((revision, result))
    }

    pub fn what_if(
        &self,
        id: &str,
        node: &str,
        weight: f64,
    ) -> Result<CompositeWeightTable, ServiceError> {
        let result = self.session(id)?.lock().evaluation()?;
        sensitivity(&result, node, weight).map_err(|e| match e {
            AhpError::UnknownNode(node) => ServiceError::UnknownNode(node),
            AhpError::WeightOutOfRange(w) => ServiceError::WeightOutOfRange(w),
            other => ServiceError::InvalidTarget(other),
        })
    }

    pub fn report(&self, id: &str, format: ReportFormat) -> Result<String, ServiceError> {
        let result = self.session(id)?.lock().evaluation()?;
        Ok(export_report(&result, format))
    }
}
