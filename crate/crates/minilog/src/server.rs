//! HTTP session service. A session is a theorem plus the tactics applied so
//! far; the goal state is derived from them and never stored separately on
//! disk.
//!
//! With a persistence directory, every session is an append-only log
//! `<id>.log` whose lines are `T <theorem>`, `+ <tactic>` and `-` (undo),
//! each payload a JSON string. Logs are replayed on startup.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use minilog_core::equivalence::{tactics_to_derivation, TacticTrace};
use minilog_core::logic::Formula;
use minilog_core::tactics::GoalState;
use minilog_core::textio::{
    parse_tactic, parse_theorem, render_derivation, render_derivation_json, render_formula, render_script,
    render_sequent, TheoremFile, CONTEXT_ALIAS,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use uuid::Uuid;

pub struct Session {
    pub id: Uuid,
    pub theorem_text: String,
    pub theorem: TheoremFile,
    pub state: GoalState,
    pub created: u64,
    pub updated: u64,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

#[derive(Default)]
pub struct Store {
    sessions: RwLock<HashMap<Uuid, Arc<Mutex<Session>>>>,
    persist: Option<PathBuf>,
}

pub type AppState = Arc<Store>;

impl Store {
    pub fn new(persist: Option<PathBuf>) -> std::io::Result<Store> {
        let store = Store {
            sessions: RwLock::default(),
            persist,
        };
        if let Some(dir) = &store.persist {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "log") {
                    match load_log(&path) {
                        Ok(s) => {
                            store.sessions.write().unwrap().insert(s.id, Arc::new(Mutex::new(s)));
                        }
                        Err(e) => eprintln!("skipping {}: {e}", path.display()),
                    }
                }
            }
        }
        Ok(store)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let unknown = || ApiError::new(StatusCode::NOT_FOUND, "UnknownSession", format!("no session `{id}`"));
        let id = Uuid::parse_str(id).map_err(|_| unknown())?;
        self.sessions.read().unwrap().get(&id).cloned().ok_or_else(unknown)
    }

    fn log(&self, id: Uuid, entry: &str) -> Result<(), ApiError> {
        let Some(dir) = &self.persist else { return Ok(()) };
        let path = dir.join(format!("{id}.log"));
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .and_then(|mut f| writeln!(f, "{entry}"))
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "PersistError", e.to_string()))
    }
}

fn load_log(path: &Path) -> Result<Session, String> {
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .and_then(|s| Uuid::parse_str(s).ok())
        .ok_or("file name is not a session id")?;
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let created = std::fs::metadata(path)
        .and_then(|m| m.created().or_else(|_| m.modified()))
        .ok()
        .and_then(|t| t.duration_since(UNIX_EPOCH).ok())
        .map_or(0, |d| d.as_secs());
    let mut lines = text.lines().enumerate();
    let payload = |s: &str| serde_json::from_str::<String>(s.trim()).map_err(|e| e.to_string());
    let theorem_text = match lines.next() {
        Some((_, l)) if l.starts_with("T ") => payload(&l[2..])?,
        _ => return Err("missing theorem line".into()),
    };
    let theorem = parse_theorem(&theorem_text).map_err(|e| e.to_string())?;
    let mut state = GoalState::new(theorem.sequent());
    for (n, l) in lines {
        let bad = |e: String| format!("line {}: {e}", n + 1);
        state = if let Some(t) = l.strip_prefix("+ ") {
            let t = parse_tactic(&payload(t).map_err(bad)?).map_err(|e| bad(e.to_string()))?;
            state.apply(&t).map_err(|e| bad(e.to_string()))?
        } else if l.trim() == "-" {
            state.undo().map_err(|e| bad(e.to_string()))?
        } else {
            return Err(bad("unrecognized entry".into()));
        };
    }
    Ok(Session {
        id,
        theorem_text,
        theorem,
        state,
        created,
        updated: now(),
    })
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            body: json!({ "code": code, "message": message.into() }),
        }
    }

    fn tactic(step: usize, code: &str, message: impl Into<String>) -> ApiError {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            body: json!({ "step": step, "code": code, "message": message.into() }),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Serialize)]
struct HypothesisView {
    label: String,
    formula: String,
}

#[derive(Serialize)]
struct StateView {
    id: Uuid,
    theorem: String,
    /// Formulas abbreviated as `Γ` in `goals`. Empty when no alias is used.
    context: Vec<String>,
    goals: Vec<String>,
    /// Labeled hypotheses of the current goal.
    hypotheses: Vec<HypothesisView>,
    script: Vec<String>,
    terminal: bool,
    created: u64,
    updated: u64,
}

fn view(s: &Session) -> StateView {
    let ctx: Vec<Formula> = s.theorem.context();
    let alias = (!ctx.is_empty()).then_some((CONTEXT_ALIAS, ctx.as_slice()));
    StateView {
        id: s.id,
        theorem: s.theorem.name.clone(),
        context: ctx.iter().map(render_formula).collect(),
        goals: s.state.goals().iter().map(|g| render_sequent(g, alias)).collect(),
        hypotheses: s
            .state
            .current()
            .map(|g| {
                g.hypotheses
                    .iter()
                    .map(|h| HypothesisView {
                        label: h.label.clone(),
                        formula: render_formula(&h.formula),
                    })
                    .collect()
            })
            .unwrap_or_default(),
        script: s.state.script().tactics.iter().map(|t| t.to_string()).collect(),
        terminal: s.state.is_terminal(),
        created: s.created,
        updated: s.updated,
    }
}

#[derive(Deserialize)]
pub struct CreateBody {
    pub theorem: String,
}

#[derive(Deserialize)]
pub struct TacticBody {
    pub text: String,
}

#[derive(Deserialize)]
pub struct ExportQuery {
    format: Option<String>,
}

async fn create(State(store): State<AppState>, Json(body): Json<CreateBody>) -> Result<Response, ApiError> {
    let theorem = parse_theorem(&body.theorem)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.code(), e.to_string()))?;
    let t = now();
    let s = Session {
        id: Uuid::new_v4(),
        theorem_text: body.theorem,
        state: GoalState::new(theorem.sequent()),
        theorem,
        created: t,
        updated: t,
    };
    store.log(s.id, &format!("T {}", json!(s.theorem_text)))?;
    let v = view(&s);
    store.sessions.write().unwrap().insert(s.id, Arc::new(Mutex::new(s)));
    Ok((StatusCode::CREATED, Json(v)).into_response())
}

async fn read(State(store): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<StateView>, ApiError> {
    let s = store.get(&id)?;
    let s = s.lock().unwrap();
    Ok(Json(view(&s)))
}

async fn step(
    State(store): State<AppState>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<TacticBody>,
) -> Result<Json<StateView>, ApiError> {
    let s = store.get(&id)?;
    let mut s = s.lock().unwrap();
    let n = s.state.script().len() + 1;
    let t = parse_tactic(&body.text).map_err(|e| ApiError::tactic(n, e.code(), e.to_string()))?;
    let next = s.state.apply(&t).map_err(|e| ApiError::tactic(n, e.code(), e.to_string()))?;
    store.log(s.id, &format!("+ {}", json!(t.to_string())))?;
    s.state = next;
    s.updated = now();
    Ok(Json(view(&s)))
}

async fn undo(State(store): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<StateView>, ApiError> {
    let s = store.get(&id)?;
    let mut s = s.lock().unwrap();
    let n = s.state.script().len();
    let prior = s.state.undo().map_err(|e| ApiError::tactic(n, e.code(), e.to_string()))?;
    store.log(s.id, "-")?;
    s.state = prior;
    s.updated = now();
    Ok(Json(view(&s)))
}

async fn derivation(
    State(store): State<AppState>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<ExportQuery>,
) -> Result<Response, ApiError> {
    let s = store.get(&id)?;
    let s = s.lock().unwrap();
    if !s.state.is_terminal() {
        let n = s.state.goals().len();
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "NotTerminal",
            format!("{n} goal(s) remaining"),
        ));
    }
    let d = TacticTrace::record(&s.theorem.sequent(), &s.state.script())
        .and_then(|tr| tactics_to_derivation(&tr))
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "TranslationFailed", e.to_string()))?;
    Ok(match q.format.as_deref() {
        Some("json") => ([(header::CONTENT_TYPE, "application/json")], render_derivation_json(&d)).into_response(),
        _ => ([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], render_derivation(&d)).into_response(),
    })
}

async fn script(State(store): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let s = store.get(&id)?;
    let s = s.lock().unwrap();
    let text = render_script(&s.state.script());
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

pub fn router(store: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(read))
        .route("/sessions/{id}/tactic", post(step))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/derivation", get(derivation))
        .route("/sessions/{id}/script", get(script))
        .with_state(store)
}

pub async fn serve(port: u16, persist: Option<PathBuf>) -> std::io::Result<()> {
    let store = Arc::new(Store::new(persist)?);
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on {} ({} session(s) restored)", listener.local_addr()?, store.len());
    axum::serve(listener, router(store)).await
}
