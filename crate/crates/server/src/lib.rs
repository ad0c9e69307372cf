//! Session-oriented HTTP API: load a terrain and plot, propose subdivision
//! pairs, inspect the recomputed plan and save accepted pairs.

mod error;
mod payload;
mod session;

use std::future::Future;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{FromRequest, Multipart, Path, Request, State};
use axum::http::{header, HeaderMap, HeaderValue};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use tower_http::cors::{Any, CorsLayer};

use agroline_core::export::{scene_from_plan, Layer, RenderScene, Shape};
use agroline_core::geometry::{convex_hull, is_convex, Point};
use agroline_core::ingest::{format_eplot, parse_eplot, parse_level_curves, parse_plot, IngestError, SubdivisionPairs};
use agroline_core::planner::{plan_concave, plan_convex, CoveragePlan, PlanError, PlanParams};
use agroline_core::surface::{build_sample_grid, fit_surface, MAX_GRID};
use agroline_core::{Pairs64, Plot64, Surface64, Terrain64};

pub use error::ApiError;
pub use payload::{ConditionPayload, CreateRequest, PairsRequest, PlanPayload, RegionPayload, SessionSummary};
pub use session::{Session, SessionHandle, SessionStore};

/// Sessions idle this long are dropped.
pub const DEFAULT_IDLE_TIMEOUT: Duration = Duration::from_secs(3600);
/// Number of polynomial contour levels in scene payloads.
pub const SCENE_CONTOURS: usize = 20;
/// Separator line between terrain and plot in a raw-text upload.
pub const RAW_SEPARATOR: &str = "---";

#[derive(Clone, Debug)]
pub struct ServerConfig {
    /// Where saved eplot files go; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
    pub idle_timeout: Duration,
    pub params: PlanParams,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            out_dir: None,
            idle_timeout: DEFAULT_IDLE_TIMEOUT,
            params: PlanParams::default(),
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<SessionStore>,
    pub config: Arc<ServerConfig>,
}

impl AppState {
    pub fn new(config: ServerConfig) -> Self {
        Self {
            store: Arc::new(SessionStore::new(config.idle_timeout)),
            config: Arc::new(config),
        }
    }
}

pub fn router(state: AppState) -> Router {
    let cors = CorsLayer::new().allow_origin(Any).allow_methods(Any).allow_headers(Any);
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/pairs", post(propose_pairs))
        .route("/sessions/{id}/save", post(save_pairs))
        .route("/sessions/{id}/scene", get(scene))
        .layer(axum::extract::DefaultBodyLimit::max(256 * 1024 * 1024))
        .layer(cors)
        .with_state(state)
}

/// Serves until `shutdown` resolves, sweeping idle sessions in the background.
pub async fn serve<F>(listener: tokio::net::TcpListener, config: ServerConfig, shutdown: F) -> std::io::Result<()>
where
    F: Future<Output = ()> + Send + 'static,
{
    let state = AppState::new(config);
    let store = state.store.clone();
    let period = (state.config.idle_timeout / 4).clamp(Duration::from_millis(10), Duration::from_secs(60));
    let sweeper = tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            store.evict_idle();
        }
    });
    let result = axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await;
    sweeper.abort();
    result
}

fn load(terrain_text: &str, plot_text: &str) -> Result<Session, ApiError> {
    let terrain: Terrain64 = parse_level_curves(terrain_text).map_err(|source| ApiError::Ingest {
        file: "terrain",
        source,
    })?;
    let plot: Plot64 = parse_plot(plot_text).map_err(|source| ApiError::Ingest { file: "plot", source })?;
    let grid =
        build_sample_grid(&terrain, MAX_GRID, MAX_GRID).map_err(|e| ApiError::BadRequest(format!("terrain: {e}")))?;
    let surface = fit_surface(&grid).map_err(|e| ApiError::BadRequest(format!("terrain: {e}")))?;
    Ok(Session {
        convex: is_convex(&plot),
        terrain: Arc::new(terrain),
        surface: Arc::new(surface),
        plot: Arc::new(plot),
        pairs: None,
        plan: None,
        created_at: Instant::now(),
    })
}

fn text(bytes: &[u8], what: &str) -> Result<String, ApiError> {
    String::from_utf8(bytes.to_vec()).map_err(|_| ApiError::BadRequest(format!("{what} is not UTF-8 text")))
}

fn content_type(headers: &HeaderMap) -> String {
    headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or("")
        .to_ascii_lowercase()
}

/// Terrain and plot text from a multipart form, a JSON object or a raw text
/// body with the two files separated by a `---` line.
async fn upload(state: &AppState, request: Request) -> Result<(String, String), ApiError> {
    let kind = content_type(request.headers());
    if kind.starts_with("multipart/form-data") {
        let mut form = Multipart::from_request(request, state)
            .await
            .map_err(|e| ApiError::BadRequest(e.to_string()))?;
        let (mut terrain, mut plot) = (None, None);
        while let Some(field) = form
            .next_field()
            .await
            .map_err(|e| ApiError::BadRequest(e.to_string()))?
        {
            let name = field.name().unwrap_or("").to_string();
            let data = field.bytes().await.map_err(|e| ApiError::BadRequest(e.to_string()))?;
            match name.as_str() {
                "terrain" => terrain = Some(text(&data, "terrain")?),
                "plot" => plot = Some(text(&data, "plot")?),
                _ => {}
            }
        }
        return match (terrain, plot) {
            (Some(t), Some(p)) => Ok((t, p)),
            _ => Err(ApiError::BadRequest(
                "multipart upload needs `terrain` and `plot` fields".into(),
            )),
        };
    }
    let body = Bytes::from_request(request, state)
        .await
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    if kind.starts_with("application/json") {
        let req: CreateRequest = serde_json::from_slice(&body).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        return Ok((req.terrain, req.plot));
    }
    let body = text(&body, "body")?;
    let mut terrain = String::new();
    let mut plot = String::new();
    let mut seen = false;
    for line in body.lines() {
        if !seen && line.trim() == RAW_SEPARATOR {
            seen = true;
            continue;
        }
        let target = if seen { &mut plot } else { &mut terrain };
        target.push_str(line);
        target.push('\n');
    }
    if !seen {
        return Err(ApiError::BadRequest(format!(
            "raw upload needs a `{RAW_SEPARATOR}` line between terrain and plot"
        )));
    }
    Ok((terrain, plot))
}

fn full_scene(terrain: &Terrain64, surface: &Surface64, plot: &Plot64, plan: Option<&CoveragePlan>) -> RenderScene {
    let mut scene = scene_from_plan(terrain, surface, plot, plan, SCENE_CONTOURS);
    if let Ok(hull) = convex_hull(plot.vertices()) {
        scene.push(Layer::new(
            "hull",
            "hull",
            vec![Shape::Path {
                parts: vec![hull.vertices().to_vec()],
                closed: true,
                failing: false,
            }],
        ));
    }
    scene
}

fn json_response<T: serde::Serialize>(value: &T) -> Result<Response, ApiError> {
    let body = serde_json::to_string(value).map_err(|e| ApiError::Internal(e.to_string()))?;
    Ok((
        [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))],
        body,
    )
        .into_response())
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))
}

async fn create_session(State(state): State<AppState>, request: Request) -> Result<Response, ApiError> {
    let (terrain_text, plot_text) = upload(&state, request).await?;
    let params = state.config.params;
    let (mut session, plan_error) = blocking(move || -> Result<_, ApiError> {
        let mut session = load(&terrain_text, &plot_text)?;
        let mut plan_error = None;
        if session.convex {
            match plan_convex(&session.plot, &session.surface, &params) {
                Ok(plan) => session.plan = Some(Arc::new(plan)),
                Err(e) => plan_error = Some(e.to_string()),
            }
        }
        Ok((session, plan_error))
    })
    .await??;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let (terrain, surface, plot) = (session.terrain.clone(), session.surface.clone(), session.plot.clone());
    let plan = session.plan.clone();
    let (high, low) = {
        let (l, h) = terrain.z_range();
        (h, l)
    };
    let summary = blocking(move || SessionSummary {
        id: String::new(),
        bounds: terrain.bounds(),
        plot_bounds: plot.bounds(),
        high,
        low,
        convex: is_convex(&plot),
        requires_subdivision: !is_convex(&plot),
        scene: full_scene(&terrain, &surface, &plot, plan.as_deref()),
        plan: plan
            .as_deref()
            .map(|p| PlanPayload::new(p, None, &terrain, &surface, &plot)),
        plan_error,
    })
    .await?;
    session.created_at = Instant::now();
    state.store.insert(id.clone(), session);
    json_response(&SessionSummary { id, ..summary })
}

fn session_for(state: &AppState, id: &str) -> Result<SessionHandle, ApiError> {
    state
        .store
        .get(id)
        .ok_or_else(|| ApiError::UnknownSession(id.to_string()))
}

/// Pair coordinates rounded to the centimetre, the precision of saved files.
fn quantize(pairs: Vec<[[f64; 2]; 2]>) -> Vec<(agroline_core::Point2, agroline_core::Point2)> {
    let q = |v: [f64; 2]| Point::new((v[0] * 100.0).round() / 100.0, (v[1] * 100.0).round() / 100.0);
    pairs.into_iter().map(|[a, b]| (q(a), q(b))).collect()
}

fn pairs_error(e: IngestError) -> ApiError {
    match e {
        IngestError::Empty => ApiError::BadRequest("no subdivision pairs given".into()),
        IngestError::Format { .. } => ApiError::BadRequest(e.to_string()),
        other => ApiError::InvalidChord(other.to_string()),
    }
}

fn parse_pairs(headers: &HeaderMap, body: &[u8], plot: &Plot64) -> Result<Pairs64, ApiError> {
    let json = content_type(headers).starts_with("application/json")
        || body.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{');
    if json {
        let req: PairsRequest = serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(e.to_string()))?;
        SubdivisionPairs::new(quantize(req.pairs), plot).map_err(pairs_error)
    } else {
        parse_eplot(&text(body, "body")?, plot).map_err(pairs_error)
    }
}

async fn propose_pairs(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, ApiError> {
    let handle = session_for(&state, &id)?;
    let mut session = handle.lock().await;
    let pairs = parse_pairs(&headers, &body, &session.plot)?;
    let (terrain, surface, plot) = (session.terrain.clone(), session.surface.clone(), session.plot.clone());
    let params = state.config.params;
    let job_pairs = pairs.clone();
    let (plan, payload) = blocking(move || -> Result<_, ApiError> {
        let plan = plan_concave(&plot, &job_pairs, &surface, &params).map_err(|e| match e {
            PlanError::InvalidChord { .. } | PlanError::InvalidParams(_) => ApiError::InvalidChord(e.to_string()),
            other => ApiError::InvalidChord(format!("planning failed: {other}")),
        })?;
        let payload = PlanPayload::new(&plan, Some(&job_pairs), &terrain, &surface, &plot);
        Ok((plan, payload))
    })
    .await??;
    session.pairs = Some(pairs);
    session.plan = Some(Arc::new(plan));
    json_response(&payload)
}

async fn save_pairs(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let handle = session_for(&state, &id)?;
    let session = handle.lock().await;
    let pairs = session.pairs.as_ref().ok_or(ApiError::NothingToSave)?;
    let content = format_eplot(pairs);
    let mut headers = HeaderMap::new();
    headers.insert(
        header::CONTENT_TYPE,
        HeaderValue::from_static("text/plain; charset=utf-8"),
    );
    if let Some(dir) = &state.config.out_dir {
        let path = dir.join(format!("{id}.eplot"));
        tokio::fs::create_dir_all(dir)
            .await
            .map_err(|e| ApiError::Internal(format!("{}: {e}", dir.display())))?;
        tokio::fs::write(&path, &content)
            .await
            .map_err(|e| ApiError::Internal(format!("{}: {e}", path.display())))?;
        if let Ok(v) = HeaderValue::from_str(&path.display().to_string()) {
            headers.insert("x-eplot-path", v);
        }
    }
    Ok((headers, content).into_response())
}

async fn scene(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let handle = session_for(&state, &id)?;
    let session = handle.lock().await;
    let (terrain, surface, plot) = (session.terrain.clone(), session.surface.clone(), session.plot.clone());
    let plan = session.plan.clone();
    drop(session);
    let scene = blocking(move || full_scene(&terrain, &surface, &plot, plan.as_deref())).await?;
    json_response(&scene)
}
