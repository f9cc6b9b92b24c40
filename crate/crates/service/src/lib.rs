//! Stateless HTTP front end: each request parses, maps and scans its own
//! document and returns the same JSON report the command line prints.
//!
//! | Route           | Result                                             |
//! |-----------------|----------------------------------------------------|
//! | `POST /v1/scan` | 200 report, 400 bad request, 413 too large, 422 unparsable YAML |
//! | `GET /v1/rules` | rule listing                                       |
//! | `GET /health`   | `ok`                                               |

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Query};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use serde_json::json;
use time::OffsetDateTime;
use tokio::net::TcpListener;
use toscasmell_core::{render_rules_json, scan_source, ConfigOverrides, ScanError};

pub const DEFAULT_MAX_BODY_BYTES: usize = 2 * 1024 * 1024;

/// File name reported when the request does not give one.
pub const DEFAULT_FILE_NAME: &str = "request.yaml";

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub max_body_bytes: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            max_body_bytes: DEFAULT_MAX_BODY_BYTES,
        }
    }
}

/// Query parameters of `POST /v1/scan`. Rule settings use the command-line
/// flag names with `_` for `-`.
#[derive(Debug, Default, Deserialize)]
#[serde(default)]
pub struct ScanParams {
    pub file: Option<String>,
    pub timestamp: bool,
    pub enable: Option<String>,
    pub disable: Option<String>,
    pub convention: Option<String>,
    pub min_key_size: Option<u32>,
    pub suspicious_keywords: Option<String>,
    pub insecure_schemes: Option<String>,
    pub weak_algorithms: Option<String>,
    pub no_redact: bool,
}

impl ScanParams {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            enable: self.enable.clone(),
            disable: self.disable.clone(),
            convention: self.convention.clone(),
            min_key_size: self.min_key_size,
            suspicious_keywords: self.suspicious_keywords.clone(),
            insecure_schemes: self.insecure_schemes.clone(),
            weak_algorithms: self.weak_algorithms.clone(),
            no_redact: self.no_redact,
        }
    }
}

pub fn router(config: ServiceConfig) -> Router {
    Router::new()
        .route("/v1/scan", post(scan))
        .route("/v1/rules", get(rules))
        .route("/health", get(health))
        .layer(DefaultBodyLimit::max(config.max_body_bytes))
}

/// Serves until interrupted.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    axum::serve(listener, router(config))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error(status: StatusCode, message: &str) -> Response {
    json_response(status, json!({ "error": message }).to_string())
}

async fn scan(
    params: Result<Query<ScanParams>, axum::extract::rejection::QueryRejection>,
    body: Bytes,
) -> Response {
    let Query(params) = match params {
        Ok(p) => p,
        Err(e) => return error(StatusCode::BAD_REQUEST, &e.body_text()),
    };
    if body.is_empty() {
        return error(StatusCode::BAD_REQUEST, "request body is empty");
    }
    let Ok(source) = String::from_utf8(body.to_vec()) else {
        return error(StatusCode::BAD_REQUEST, "request body is not valid UTF-8");
    };
    let config = match params.overrides().to_config() {
        Ok(c) => c,
        Err(e) => return error(StatusCode::BAD_REQUEST, &e.to_string()),
    };
    let file = params.file.unwrap_or_else(|| DEFAULT_FILE_NAME.to_string());
    let result = tokio::task::spawn_blocking(move || scan_source(&source, &file, &config)).await;
    match result {
        Ok(Ok(report)) => {
            let report = if params.timestamp {
                report.with_timestamp(OffsetDateTime::now_utc())
            } else {
                report
            };
            json_response(StatusCode::OK, report.render_json())
        }
        Ok(Err(e @ ScanError::Parse(_))) => json_response(
            StatusCode::UNPROCESSABLE_ENTITY,
            json!({ "error": "document could not be parsed", "diagnostics": e.diagnostics() })
                .to_string(),
        ),
        Ok(Err(e)) => error(StatusCode::BAD_REQUEST, &e.to_string()),
        Err(_) => error(StatusCode::INTERNAL_SERVER_ERROR, "scan failed"),
    }
}

async fn rules() -> Response {
    json_response(StatusCode::OK, render_rules_json())
}

async fn health() -> &'static str {
    "ok"
}
