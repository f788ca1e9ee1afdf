use std::time::Instant;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use motionsimp::fixtures;
use motionsimp::io::to_json_string;
use motionsimp_service::{router, ServiceOptions, VERSION};
use serde_json::Value;
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: impl Into<Body>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri).body(body.into()).unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    (status, res.into_body().collect().await.unwrap().to_bytes().to_vec())
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

async fn upload(app: &Router, body: String) -> String {
    let (status, bytes) = call(app, "POST", "/sequences", body).await;
    assert_eq!(status, StatusCode::CREATED, "{}", String::from_utf8_lossy(&bytes));
    json(&bytes)["id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn health() {
    let app = router(&ServiceOptions::default());
    let start = Instant::now();
    let (status, body) = call(&app, "GET", "/healthz", Body::empty()).await;
    assert!(start.elapsed().as_millis() < 50);
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["version"], VERSION);
}

#[tokio::test]
async fn upload_and_profile() {
    let app = router(&ServiceOptions::default());
    let text = to_json_string(&fixtures::static_pose(30, 60.0));
    let a = upload(&app, text.clone()).await;
    let b = upload(&app, text).await;
    assert_ne!(a, b);

    let (status, body) = call(&app, "GET", &format!("/sequences/{a}/profile"), Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    for c in ["c1", "c2", "c3", "c4", "c5"] {
        assert_eq!(v[c], 0.0);
    }
    // Repeat calls return the same bytes.
    let (_, again) = call(&app, "GET", &format!("/sequences/{a}/profile"), Body::empty()).await;
    assert_eq!(body, again);
}

#[tokio::test]
async fn bad_uploads() {
    let app = router(&ServiceOptions::default());
    let (status, _) = call(&app, "POST", "/sequences", "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let mut v: Value = serde_json::from_str(&to_json_string(&fixtures::static_pose(4, 30.0))).unwrap();
    v["joints"].as_array_mut().unwrap().pop();
    for f in v["frames"].as_array_mut().unwrap() {
        f.as_array_mut().unwrap().pop();
    }
    let (status, body) = call(&app, "POST", "/sequences", v.to_string()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(json(&body)["error"].is_string());

    let big = vec![b' '; motionsimp_service::BODY_LIMIT + 1];
    let (status, _) = call(&app, "POST", "/sequences", big).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn unknown_ids() {
    let app = router(&ServiceOptions::default());
    let (status, _) = call(&app, "GET", "/sequences/nope/profile", Body::empty()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "POST", "/sequences/nope/simplify", "{}").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn simplify_roundtrip() {
    let app = router(&ServiceOptions::default());
    let seq = fixtures::random_dance(4, 120, 60.0);
    let id = upload(&app, to_json_string(&seq)).await;
    let uri = format!("/sequences/{id}/simplify");

    let none = r#"{"criteria_enabled": [false, false, false, false, false]}"#;
    let (status, body) = call(&app, "POST", &uri, none).await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["before"], v["after"]);
    let echoed = motionsimp::io::from_json_str(&v["motion"].to_string()).unwrap();
    assert_eq!(echoed, seq);

    // Identity compression is always rejected by the guard.
    let identity = r#"{"k": 1.0, "criteria_enabled": [false, true, false, false, false]}"#;
    let (status, body) = call(&app, "POST", &uri, identity).await;
    assert_eq!(status, StatusCode::OK);
    let stage = &json(&body)["applied"][1];
    assert_eq!(stage["attempted"], true);
    assert_eq!(stage["accepted"], false);

    let (_, first) = call(&app, "POST", &uri, "").await;
    let (_, second) = call(&app, "POST", &uri, "").await;
    assert_eq!(first, second);

    for bad in [r#"{"k": -1}"#, r#"{"lambda_slow": 1}"#, r#"{"unknown": true}"#, "[1, 2"] {
        let (status, _) = call(&app, "POST", &uri, bad).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{bad}");
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn sessions_are_isolated() {
    let app = router(&ServiceOptions::default());
    let a = fixtures::random_dance(1, 90, 60.0);
    let b = fixtures::spinner(2, 90, 60.0, 6.0);
    let ia = upload(&app, to_json_string(&a)).await;
    let ib = upload(&app, to_json_string(&b)).await;
    let (ua, ub) = (format!("/sequences/{ia}/simplify"), format!("/sequences/{ib}/simplify"));
    let (ra, rb) = tokio::join!(call(&app, "POST", &ua, ""), call(&app, "POST", &ub, r#"{"k": 0.2}"#));
    assert_eq!(ra.0, StatusCode::OK);
    assert_eq!(rb.0, StatusCode::OK);
    let (_, pa) = call(&app, "GET", &format!("/sequences/{ia}/profile"), Body::empty()).await;
    let want = motionsimp::api::profile_json(
        &motionsimp::compute_profile(&a, &motionsimp::MetricWeights::default()).unwrap(),
        a.frames(),
        a.fps(),
    );
    assert_eq!(String::from_utf8(pa).unwrap(), want);
}

#[tokio::test]
async fn store_evicts_oldest() {
    let app = router(&ServiceOptions { capacity: 2, ..Default::default() });
    let text = to_json_string(&fixtures::static_pose(3, 30.0));
    let first = upload(&app, text.clone()).await;
    upload(&app, text.clone()).await;
    upload(&app, text).await;
    let (status, _) = call(&app, "GET", &format!("/sequences/{first}/profile"), Body::empty()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn cors_allows_localhost_only() {
    let app = router(&ServiceOptions::default());
    let origin = |o: &'static str| {
        Request::builder().uri("/healthz").header("origin", o).body(Body::empty()).unwrap()
    };
    let res = app.clone().oneshot(origin("http://localhost:5173")).await.unwrap();
    assert_eq!(res.headers()["access-control-allow-origin"], "http://localhost:5173");
    let res = app.clone().oneshot(origin("https://example.org")).await.unwrap();
    assert!(res.headers().get("access-control-allow-origin").is_none());

    let open = router(&ServiceOptions { cors_any: true, ..Default::default() });
    let res = open.oneshot(origin("https://example.org")).await.unwrap();
    assert_eq!(res.headers()["access-control-allow-origin"], "*");
}
