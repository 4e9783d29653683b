//! The `/api/v1` HTTP surface.
//!
//! The server holds an immutable snapshot of the registry and of the trace
//! feature vectors. Requests never write to the corpus; a reload swaps the
//! whole snapshot.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query as UrlQuery, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ontology_core::cluster::{ClusterError, SelectedCluster};
use ontology_core::exact::parse_rational;
use ontology_core::export::{site_data, PublicEntry, SiteData};
use ontology_core::query::{Direction, SortField};
use ontology_core::{
    evaluate, facet_counts, heatmap, select_subset, AxisWeights, ComputeBoundTag, CutControl, Dendrogram, Domain,
    FacetCounts, FeatureVector, HeatmapMatrix, Linkage, Motif, Query, RatingCard, Registry,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::score::{score_card, ScoreReport};
use crate::traces::full_dendrogram;

pub const DEFAULT_LIMIT: usize = 50;

/// Every `code` an error response can carry.
pub const ERROR_CODES: [&str; 6] =
    ["INVALID_BODY", "INVALID_QUERY", "NOT_FOUND", "DEGENERATE_INPUT", "NO_TRACES", "INTERNAL"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        debug_assert!(ERROR_CODES.contains(&code));
        ApiError { status: status.as_u16(), code: code.into(), message: message.into(), detail: None }
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    fn invalid_body(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "INVALID_BODY", message)
    }

    fn invalid_query(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "INVALID_QUERY", message)
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::invalid_body(r.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

/// What the server answers from.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub registry: Registry,
    pub vectors: Vec<FeatureVector>,
}

#[derive(Debug, Clone)]
pub struct AppState {
    current: Arc<RwLock<Arc<Snapshot>>>,
}

impl AppState {
    pub fn new(registry: Registry, vectors: Vec<FeatureVector>) -> Self {
        AppState { current: Arc::new(RwLock::new(Arc::new(Snapshot { registry, vectors }))) }
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        self.current.read().expect("snapshot lock").clone()
    }

    /// Replaces the snapshot; in-flight requests keep the one they started with.
    pub fn replace(&self, registry: Registry, vectors: Vec<FeatureVector>) {
        *self.current.write().expect("snapshot lock") = Arc::new(Snapshot { registry, vectors });
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/v1/benchmarks", get(list_benchmarks))
        .route("/api/v1/benchmarks/{id}", get(get_benchmark))
        .route("/api/v1/query", post(run_query))
        .route("/api/v1/heatmap", get(get_heatmap))
        .route("/api/v1/score", post(score))
        .route("/api/v1/cluster", post(cluster))
        .route("/api/v1/site-data", get(get_site_data))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "NOT_FOUND", "no such endpoint") })
        .with_state(state)
}

#[derive(Debug, Serialize)]
pub struct Page {
    pub total: usize,
    pub limit: usize,
    pub offset: usize,
    pub items: Vec<PublicEntry>,
}

/// Builds a [`Query`] plus paging from URL parameters. Set-valued fields may
/// be repeated or comma separated.
pub fn query_from_params(params: &[(String, String)]) -> Result<(Query, usize, usize), ApiError> {
    let mut q = Query::default();
    let mut limit = DEFAULT_LIMIT;
    let mut offset = 0;
    let split = |v: &str| v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_string).collect::<Vec<_>>();
    let flag = |k: &str, v: &str| match v {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(ApiError::invalid_query(format!("`{k}` must be true or false"))),
    };
    let number = |k: &str, v: &str| {
        v.parse::<usize>().map_err(|_| ApiError::invalid_query(format!("`{k}` must be a nonnegative integer")))
    };
    for (k, v) in params {
        match k.as_str() {
            "domains_any_of" => {
                q.domains_any_of.get_or_insert_with(BTreeSet::new).extend(split(v).iter().map(|s| Domain::new(s)))
            }
            "motifs_any_of" => {
                q.motifs_any_of.get_or_insert_with(BTreeSet::new).extend(split(v).iter().map(|s| Motif::new(s)))
            }
            "compute_tags_any_of" => {
                let set = q.compute_tags_any_of.get_or_insert_with(BTreeSet::new);
                for tag in split(v) {
                    let parsed = ComputeBoundTag::parse(&tag)
                        .ok_or_else(|| ApiError::invalid_query(format!("unknown compute tag `{tag}`")))?;
                    set.insert(parsed);
                }
            }
            "min_average" => {
                q.min_average =
                    Some(parse_rational(v).ok_or_else(|| ApiError::invalid_query(format!("bad min_average `{v}`")))?)
            }
            "endorsed_only" => q.endorsed_only = flag(k, v)?,
            "text" => q.text = Some(v.clone()),
            "sort" => {
                q.sort.field = serde_json::from_value::<SortField>(json!(v))
                    .map_err(|_| ApiError::invalid_query(format!("unknown sort field `{v}`")))?
            }
            "direction" => {
                q.sort.direction = serde_json::from_value::<Direction>(json!(v))
                    .map_err(|_| ApiError::invalid_query(format!("direction must be asc or desc, got `{v}`")))?
            }
            "limit" => limit = number(k, v)?,
            "offset" => offset = number(k, v)?,
            other => return Err(ApiError::invalid_query(format!("unknown parameter `{other}`"))),
        }
    }
    Ok((q, limit, offset))
}

fn query_error(e: ontology_core::query::QueryError) -> ApiError {
    ApiError::invalid_query(e.to_string())
}

async fn list_benchmarks(
    State(state): State<AppState>,
    UrlQuery(params): UrlQuery<Vec<(String, String)>>,
) -> Result<Json<Page>, ApiError> {
    let (q, limit, offset) = query_from_params(&params)?;
    let snap = state.snapshot();
    let hits = evaluate(&q, &snap.registry).map_err(query_error)?;
    Ok(Json(Page {
        total: hits.len(),
        limit,
        offset,
        items: hits.into_iter().skip(offset).take(limit).map(PublicEntry::from).collect(),
    }))
}

async fn get_benchmark(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<PublicEntry>, ApiError> {
    let snap = state.snapshot();
    snap.registry
        .get(&id)
        .map(|e| Json(PublicEntry::from(e)))
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "NOT_FOUND", format!("no benchmark with id `{id}`")))
}

#[derive(Debug, Serialize)]
pub struct QueryResponse {
    pub total: usize,
    pub items: Vec<PublicEntry>,
    pub facets: FacetCounts,
}

async fn run_query(
    State(state): State<AppState>,
    body: Result<Json<Query>, JsonRejection>,
) -> Result<Json<QueryResponse>, ApiError> {
    let Json(q) = body?;
    let snap = state.snapshot();
    let hits = evaluate(&q, &snap.registry).map_err(query_error)?;
    let facets = facet_counts(&q, &snap.registry).map_err(query_error)?;
    Ok(Json(QueryResponse { total: hits.len(), items: hits.into_iter().map(PublicEntry::from).collect(), facets }))
}

async fn get_heatmap(State(state): State<AppState>) -> Json<HeatmapMatrix> {
    Json(heatmap(&state.snapshot().registry))
}

async fn score(body: Result<Json<RatingCard>, JsonRejection>) -> Result<Json<ScoreReport>, ApiError> {
    let Json(card) = body?;
    score_card(&card).map(Json).map_err(|e| ApiError::invalid_body(e.to_string()))
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterRequest {
    #[serde(default)]
    pub weights: AxisWeights,
    pub threshold: Option<f64>,
    pub k: Option<usize>,
    #[serde(default)]
    pub linkage: Linkage,
}

#[derive(Debug, Serialize)]
pub struct ClusterResponse {
    pub threshold: f64,
    pub clusters: Vec<SelectedCluster>,
    pub medoids: Vec<String>,
    pub assignments: BTreeMap<String, usize>,
    pub excluded: Vec<String>,
    pub dendrogram: Dendrogram,
}

async fn cluster(
    State(state): State<AppState>,
    body: Result<Json<ClusterRequest>, JsonRejection>,
) -> Result<Json<ClusterResponse>, ApiError> {
    let Json(req) = body?;
    let control = match (req.threshold, req.k) {
        (Some(t), None) if t.is_finite() && t >= 0.0 => CutControl::Threshold(t),
        (Some(_), None) => return Err(ApiError::invalid_body("threshold must be a finite nonnegative number")),
        (None, Some(k)) if k >= 1 => CutControl::Clusters(k),
        (None, Some(_)) => return Err(ApiError::invalid_body("k must be at least 1")),
        _ => return Err(ApiError::invalid_body("give exactly one of `threshold` and `k`")),
    };
    let snap = state.snapshot();
    if snap.vectors.is_empty() {
        return Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "NO_TRACES",
            "the server has no power traces loaded",
        ));
    }
    let sel = select_subset(&snap.registry, &snap.vectors, &req.weights, control, req.linkage).map_err(|e| {
        let unprocessable = |code| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, code, e.to_string());
        match &e {
            ClusterError::DegenerateVector { workload_id, .. } => {
                unprocessable("DEGENERATE_INPUT").with_detail(json!({ "workload_id": workload_id }))
            }
            ClusterError::InvalidWeights(_) | ClusterError::LengthMismatch { .. } => unprocessable("DEGENERATE_INPUT"),
            ClusterError::NoOverlap => unprocessable("NO_TRACES"),
            _ => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string()),
        }
    })?;
    Ok(Json(ClusterResponse {
        threshold: sel.threshold,
        medoids: sel.representatives().into_iter().map(str::to_string).collect(),
        clusters: sel.clusters,
        assignments: sel.assignments,
        excluded: sel.excluded,
        dendrogram: sel.dendrogram,
    }))
}

async fn get_site_data(State(state): State<AppState>) -> Result<Json<SiteData>, ApiError> {
    let snap = state.snapshot();
    let data = site_data(&snap.registry, snap.registry.manifest().generated_at);
    if snap.vectors.is_empty() {
        return Ok(Json(data));
    }
    let dendrogram = full_dendrogram(&snap.registry, &snap.vectors, Linkage::default())
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "DEGENERATE_INPUT", e.to_string()))?;
    Ok(Json(data.with_dendrogram(dendrogram)))
}
