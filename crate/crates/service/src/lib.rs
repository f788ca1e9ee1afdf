//! HTTP front end for analysis and what-if simplification of uploaded clips.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/sequences` | motion-JSON | 201 `{"id"}` |
//! | GET | `/sequences/{id}/profile` | | profile document |
//! | POST | `/sequences/{id}/simplify` | simplify config (may be empty) | result document with output motion |
//! | GET | `/healthz` | | `{"status","version"}` |

mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use motionsimp::api::{profile_json, simplify_json};
use motionsimp::io::from_json_str;
use motionsimp::simplify::{simplify, SimplifyConfig};
use serde_json::json;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::ServeDir;

pub use store::{Session, SessionStore};

pub const DEFAULT_PORT: u16 = 7340;
pub const BODY_LIMIT: usize = 64 * 1024 * 1024;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone)]
pub struct ServiceOptions {
    pub capacity: usize,
    /// Directory served at `/` (the built studio bundle).
    pub static_dir: Option<PathBuf>,
    /// Allow cross-origin requests from anywhere, not only localhost.
    pub cors_any: bool,
}

impl Default for ServiceOptions {
    fn default() -> Self {
        Self { capacity: 64, static_dir: None, cors_any: false }
    }
}

#[derive(Clone)]
pub struct AppState {
    store: Arc<Mutex<SessionStore>>,
}

impl AppState {
    pub fn new(capacity: usize) -> Self {
        Self { store: Arc::new(Mutex::new(SessionStore::new(capacity))) }
    }

    fn session(&self, id: &str) -> Result<Arc<Session>, ApiError> {
        self.store
            .lock()
            .expect("store lock")
            .get(id)
            .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no sequence {id:?}")))
    }
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

fn json_text(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))], body).into_response()
}

pub fn router(options: &ServiceOptions) -> Router {
    let state = AppState::new(options.capacity);
    let mut app = Router::new()
        .route("/healthz", get(healthz))
        .route("/sequences", post(upload))
        .route("/sequences/{id}/profile", get(profile))
        .route("/sequences/{id}/simplify", post(run_simplify))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(cors(options.cors_any))
        .with_state(state);
    if let Some(dir) = &options.static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    app
}

fn cors(any: bool) -> CorsLayer {
    let layer = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    if any {
        layer.allow_origin(Any)
    } else {
        layer.allow_origin(AllowOrigin::predicate(|origin, _| {
            origin.to_str().map(is_local_origin).unwrap_or(false)
        }))
    }
}

fn is_local_origin(origin: &str) -> bool {
    let rest = origin
        .strip_prefix("http://")
        .or_else(|| origin.strip_prefix("https://"))
        .unwrap_or(origin);
    let host = if rest.starts_with('[') {
        rest.split_inclusive(']').next().unwrap_or(rest)
    } else {
        rest.split(':').next().unwrap_or(rest)
    };
    matches!(host, "localhost" | "127.0.0.1" | "[::1]")
}

async fn healthz() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "version": VERSION }))
}

async fn upload(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError(StatusCode::BAD_REQUEST, e.to_string()))?;
    let motion = from_json_str(text).map_err(|e| ApiError(StatusCode::BAD_REQUEST, e.to_string()))?;
    let id = uuid::Uuid::new_v4().to_string();
    state.store.lock().expect("store lock").insert(id.clone(), motion);
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))).into_response())
}

async fn profile(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = state.session(&id)?;
    let body = tokio::task::spawn_blocking(move || -> Result<String, String> {
        let p = s.profile().map_err(|e| e.to_string())?;
        Ok(profile_json(p, s.motion.frames(), s.motion.fps()))
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
    .map_err(|e| ApiError(StatusCode::UNPROCESSABLE_ENTITY, e))?;
    Ok(json_text(StatusCode::OK, body))
}

async fn run_simplify(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let s = state.session(&id)?;
    let config = parse_config(&body)?;
    let body = tokio::task::spawn_blocking(move || -> Result<String, String> {
        let r = Arc::new(simplify(&s.motion, &config).map_err(|e| e.to_string())?);
        let text = simplify_json(&r);
        s.set_last_result(r);
        Ok(text)
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
    .map_err(|e| ApiError(StatusCode::UNPROCESSABLE_ENTITY, e))?;
    Ok(json_text(StatusCode::OK, body))
}

fn parse_config(body: &[u8]) -> Result<SimplifyConfig, ApiError> {
    let unprocessable = |m: String| ApiError(StatusCode::UNPROCESSABLE_ENTITY, m);
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(SimplifyConfig::default());
    }
    let config: SimplifyConfig = serde_json::from_slice(body).map_err(|e| unprocessable(e.to_string()))?;
    config.validate().map_err(|e| unprocessable(e.to_string()))?;
    Ok(config)
}

/// Bind and serve until interrupted.
pub async fn serve(addr: SocketAddr, options: ServiceOptions) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(&options))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
