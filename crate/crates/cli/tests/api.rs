use std::path::PathBuf;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use ontology_cli::api::{query_from_params, router, AppState, ERROR_CODES};
use ontology_cli::traces::featurize_dir;
use ontology_core::{load_corpus, seed_registry};
use serde_json::{json, Value};
use tower::ServiceExt;

fn core_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core")
}

fn seed_app() -> axum::Router {
    router(AppState::new(seed_registry(), Vec::new()))
}

fn fixture_app() -> axum::Router {
    let dir = core_dir().join("tests/fixtures/synthetic9");
    let r = load_corpus(dir.join("corpus.ontology.json")).unwrap();
    let vectors = featurize_dir(&dir.join("traces"), 16, Some(320.0)).unwrap();
    router(AppState::new(r, vectors))
}

async fn call(app: axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let builder = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => builder.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => builder.body(Body::empty()),
    }
    .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn ids(items: &Value) -> Vec<String> {
    items.as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap().to_string()).collect()
}

fn assert_error(body: &Value, code: &str) {
    assert_eq!(body["code"], code);
    assert!(ERROR_CODES.contains(&code));
    assert!(body["message"].as_str().is_some_and(|m| !m.is_empty()));
}

#[tokio::test]
async fn list_defaults_to_first_page() {
    let (status, body) = call(seed_app(), "GET", "/api/v1/benchmarks", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["total"], 74);
    assert_eq!(body["limit"], 50);
    assert_eq!(body["offset"], 0);
    assert_eq!(body["items"].as_array().unwrap().len(), 50);
    let (_, rest) = call(seed_app(), "GET", "/api/v1/benchmarks?offset=50", None).await;
    assert_eq!(rest["items"].as_array().unwrap().len(), 24);
}

#[tokio::test]
async fn endorsed_only_lists_the_bold_rows() {
    let (status, body) = call(seed_app(), "GET", "/api/v1/benchmarks?endorsed_only=true&limit=100", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["total"], 18);
    for e in body["items"].as_array().unwrap() {
        assert_eq!(e["endorsed"], true);
        assert!(e["average"].as_str().unwrap() >= "4.50");
        assert!(e["average_exact"].is_string());
        assert!(e.get("rating").is_none());
    }
}

#[tokio::test]
async fn list_accepts_repeated_and_comma_separated_sets() {
    let (_, a) = call(
        seed_app(),
        "GET",
        "/api/v1/benchmarks?domains_any_of=Chemistry&domains_any_of=Mathematics&limit=100",
        None,
    )
    .await;
    let (_, b) =
        call(seed_app(), "GET", "/api/v1/benchmarks?domains_any_of=Chemistry,Mathematics&limit=100", None).await;
    assert_eq!(ids(&a["items"]), ids(&b["items"]));
    assert!(a["total"].as_u64().unwrap() > 0);
    let (_, c) =
        call(seed_app(), "POST", "/api/v1/query", Some(json!({"domains_any_of": ["Chemistry", "Mathematics"]}))).await;
    assert_eq!(ids(&a["items"]), ids(&c["items"]));
}

#[tokio::test]
async fn bad_list_parameters_are_rejected() {
    for uri in [
        "/api/v1/benchmarks?limit=-1",
        "/api/v1/benchmarks?endorsed_only=maybe",
        "/api/v1/benchmarks?colour=red",
        "/api/v1/benchmarks?min_average=9",
        "/api/v1/benchmarks?sort=popularity",
    ] {
        let (status, body) = call(seed_app(), "GET", uri, None).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{uri}");
        assert_error(&body, "INVALID_QUERY");
    }
}

#[tokio::test]
async fn single_benchmark_and_unknown_id() {
    let id = "neurips2024-0db7f135:anomaly-detection";
    let (status, body) = call(seed_app(), "GET", &format!("/api/v1/benchmarks/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["average"], "4.50");
    assert_eq!(body["average_exact"], "9/2");
    assert_eq!(body["endorsed"], true);
    let (status, body) = call(seed_app(), "GET", "/api/v1/benchmarks/nope:none", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_error(&body, "NOT_FOUND");
}

#[tokio::test]
async fn query_returns_items_and_facets() {
    let q = json!({"domains_any_of": ["Climate & Earth Science"], "motifs_any_of": ["Anomaly Detection"]});
    let (status, body) = call(seed_app(), "POST", "/api/v1/query", Some(q)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["total"], 2);
    let shown: Vec<&str> = body["items"].as_array().unwrap().iter().map(|e| e["average"].as_str().unwrap()).collect();
    assert_eq!(shown, vec!["4.50", "3.83"]);
    assert_eq!(body["facets"]["endorsed"]["true"], 1);
    assert_eq!(body["facets"]["endorsed"]["false"], 1);
    assert!(body["facets"]["motif"]["Anomaly Detection"].as_u64().unwrap() >= 2);
}

#[tokio::test]
async fn malformed_query_bodies_get_400() {
    for body in [json!({"domain": ["Chemistry"]}), json!({"domains_any_of": []}), json!({"min_average": "x"})] {
        let (status, resp) = call(seed_app(), "POST", "/api/v1/query", Some(body.clone())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert!(resp["code"] == "INVALID_BODY" || resp["code"] == "INVALID_QUERY");
    }
}

#[tokio::test]
async fn heatmap_and_site_data() {
    let (status, h) = call(seed_app(), "GET", "/api/v1/heatmap", None).await;
    assert_eq!(status, StatusCode::OK);
    let total: u64 =
        h["counts"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).map(|c| c.as_u64().unwrap()).sum();
    let domains: usize = seed_registry().entries().iter().map(|e| e.domains().len()).sum();
    assert_eq!(total as usize, domains);
    let (_, a) = call(seed_app(), "GET", "/api/v1/site-data", None).await;
    let (_, b) = call(seed_app(), "GET", "/api/v1/site-data", None).await;
    assert_eq!(a, b);
    assert_eq!(a["entries"].as_array().unwrap().len(), 74);
    assert_eq!(a["heatmap"], h);
}

#[tokio::test]
async fn score_previews_a_card() {
    let all = |v: bool| {
        json!({
            "software": {"code_available": v, "code_complete": v, "code_documented": v, "runs_unmodified": v, "environment_provided": v},
            "specification": {"constraints_provided": v, "task_clear": v, "dataset_format_specified": v, "inputs_specified": v, "outputs_specified": v},
            "dataset": {"fair_findable": v, "fair_accessible": v, "fair_interoperable": v, "fair_reusable": v, "has_splits": v},
            "metrics": {"definitions_level": if v { 3 } else { 0 }, "quality_level": if v { 2 } else { 0 }},
            "reference": {"publicly_available": v, "well_documented": v, "requirements_listed": v, "metrics_evaluated": v, "baseline_open": v},
            "documentation": {"task_documented": v, "background_explained": v, "motivation_explained": v, "evaluation_explained": v, "paper_exists": v}
        })
    };
    let (status, body) = call(seed_app(), "POST", "/api/v1/score", Some(all(false))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["average"], "0.00");
    assert_eq!(body["endorsed"], false);
    let (_, body) = call(seed_app(), "POST", "/api/v1/score", Some(all(true))).await;
    assert_eq!(body["average"], "5.00");
    assert_eq!(body["average_exact"], "5");
    assert_eq!(body["scores"]["metrics"], "5.00");
    assert_eq!(body["endorsed"], true);

    let mut partial = all(true);
    partial.as_object_mut().unwrap().remove("dataset");
    let (status, body) = call(seed_app(), "POST", "/api/v1/score", Some(partial)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_error(&body, "INVALID_BODY");
}

#[tokio::test]
async fn cluster_with_k_one_groups_everything() {
    let (status, body) = call(fixture_app(), "POST", "/api/v1/cluster", Some(json!({"k": 1}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["clusters"].as_array().unwrap().len(), 1);
    assert_eq!(body["clusters"][0]["members"].as_array().unwrap().len(), 9);
    assert_eq!(body["dendrogram"]["merges"].as_array().unwrap().len(), 8);
    assert_eq!(body["medoids"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn cluster_at_cut_gives_three_groups() {
    let req = json!({"threshold": 0.72, "linkage": "average", "weights": {"power": 2.0}});
    let (status, body) = call(fixture_app(), "POST", "/api/v1/cluster", Some(req)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["clusters"].as_array().unwrap().len(), 3);
    assert_eq!(body["assignments"].as_object().unwrap().len(), 9);
    for group in ["low", "high", "mixed"] {
        let labels: Vec<&Value> =
            (1..=3).map(|k| &body["assignments"][format!("synth-{group}-{k}:power-profile")]).collect();
        assert!(labels.iter().all(|l| *l == labels[0]), "{group}");
    }
}

#[tokio::test]
async fn cluster_errors() {
    let (status, body) = call(seed_app(), "POST", "/api/v1/cluster", Some(json!({"k": 2}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error(&body, "NO_TRACES");

    // Every axis weighted zero leaves nothing to compare.
    let req = json!({"k": 2, "weights": {"power": 0.0, "dataset": 0.0}});
    let (status, body) = call(fixture_app(), "POST", "/api/v1/cluster", Some(req)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error(&body, "DEGENERATE_INPUT");

    for bad in [json!({}), json!({"k": 2, "threshold": 0.5}), json!({"k": 0}), json!({"k": 2, "linkage": "ward"})] {
        let (status, body) = call(fixture_app(), "POST", "/api/v1/cluster", Some(bad.clone())).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{bad}");
        assert_error(&body, "INVALID_BODY");
    }
}

#[tokio::test]
async fn unknown_route_is_not_found() {
    let (status, body) = call(seed_app(), "GET", "/api/v2/benchmarks", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_error(&body, "NOT_FOUND");
}

#[test]
fn params_mirror_query_fields() {
    let pairs: Vec<(String, String)> = [
        ("motifs_any_of", "Regression"),
        ("min_average", "4.5"),
        ("text", "climate"),
        ("compute_tags_any_of", "MemoryBound"),
        ("sort", "title"),
        ("direction", "asc"),
        ("limit", "5"),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    let (q, limit, offset) = query_from_params(&pairs).unwrap();
    let expected: ontology_core::Query = serde_json::from_value(json!({
        "motifs_any_of": ["Regression"], "min_average": "9/2", "text": "climate",
        "compute_tags_any_of": ["MemoryBound"], "sort": {"field": "title", "direction": "asc"}
    }))
    .unwrap();
    assert_eq!(q, expected);
    assert_eq!((limit, offset), (5, 0));
}

#[tokio::test]
async fn site_data_embeds_dendrogram_when_traces_are_loaded() {
    let (_, plain) = call(seed_app(), "GET", "/api/v1/site-data", None).await;
    assert!(plain.get("dendrogram").is_none());
    let (status, data) = call(fixture_app(), "GET", "/api/v1/site-data", None).await;
    assert_eq!(status, StatusCode::OK);
    let (_, clustered) = call(fixture_app(), "POST", "/api/v1/cluster", Some(json!({"k": 1}))).await;
    assert_eq!(data["dendrogram"], clustered["dendrogram"]);
    assert_eq!(data["dendrogram"]["leaves"].as_array().unwrap().len(), 9);
}
