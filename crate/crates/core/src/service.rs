//! Local HTTP service: `POST /layout` plus the static web UI bundle.

use std::path::PathBuf;
use std::time::Instant;

use axum::extract::rejection::JsonRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use crate::error::LayoutError;
use crate::input::{load, InputError, InputKind, Source};
use crate::layout::{print_layout, top_level_well_formed, width};
use crate::pipeline::{compile, print_aligned, print_immediate, Compiled, LayoutParams};
use crate::render::{layout_height, render_named, render_svg, RenderStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DumpStage {
    Immediate,
    Aligned,
    Wrapped,
    Layout,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutRequest {
    pub source: String,
    #[serde(default)]
    pub input_kind: InputKind,
    #[serde(default)]
    pub params: LayoutParams,
    #[serde(default)]
    pub dump: Option<DumpStage>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min_content: f64,
    pub max_content: f64,
    pub chosen_content: f64,
    pub height: f64,
    pub wrap_penalty: f64,
    pub elapsed_ms: f64,
    pub degraded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutResponse {
    pub svg: String,
    pub stats: Stats,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ServiceError {
    BadRequest(String),
    TargetTooSmall { message: String, min_content: f64 },
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        match self {
            ServiceError::BadRequest(message) => {
                (StatusCode::BAD_REQUEST, Json(serde_json::json!({ "error": message }))).into_response()
            }
            ServiceError::TargetTooSmall { message, min_content } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                Json(serde_json::json!({ "error": message, "min_content": min_content })),
            )
                .into_response(),
        }
    }
}

impl From<LayoutError> for ServiceError {
    fn from(e: LayoutError) -> Self {
        match e {
            LayoutError::TargetTooSmall { min_content, .. } | LayoutError::NoFeasibleWrap { min_content, .. } => {
                ServiceError::TargetTooSmall { message: e.to_string(), min_content }
            }
            other => ServiceError::BadRequest(other.to_string()),
        }
    }
}

impl From<InputError> for ServiceError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Layout(l) => l.into(),
            InputError::Parse(p) => ServiceError::BadRequest(p.to_string()),
        }
    }
}

/// Handles one request. A pure function of the request except for `elapsed_ms`.
pub fn handle(req: &LayoutRequest) -> Result<LayoutResponse, ServiceError> {
    let start = Instant::now();
    req.params.validate().map_err(ServiceError::BadRequest)?;
    let rs = RenderStyle::with_style(req.params.style.clone());
    let mut resp = match load(req.input_kind, &req.source)? {
        Source::Layout(l) => {
            let report = top_level_well_formed(&l, &req.params.style);
            let diagnostics: Vec<Diagnostic> = report
                .violations
                .iter()
                .map(|v| Diagnostic {
                    severity: "error".into(),
                    rule: Some(v.rule.name().into()),
                    path: Some(v.path_string()),
                    message: v.message.clone(),
                })
                .collect();
            let w = width(&l, &req.params.style);
            let svg = render_svg(&l, &rs).unwrap_or_default();
            let height = if diagnostics.is_empty() { layout_height(&l, &req.params.style) } else { 0.0 };
            let dump = req.dump.map(|_| print_layout(&l));
            let stats = Stats { min_content: w, max_content: w, chosen_content: w, height, ..Default::default() };
            LayoutResponse { svg, stats, diagnostics, dump }
        }
        Source::Diagrams(diagrams) => {
            let mut compiled: Vec<(Option<String>, Compiled)> = Vec::with_capacity(diagrams.len());
            for (name, d) in diagrams {
                compiled.push((name, compile(&d, &req.params)?));
            }
            let svg = if compiled.len() == 1 && compiled[0].0.is_none() {
                render_svg(&compiled[0].1.layout, &rs)
            } else {
                let items: Vec<(String, crate::layout::Layout)> = compiled
                    .iter()
                    .map(|(n, c)| (n.clone().unwrap_or_default(), c.layout.clone()))
                    .collect();
                render_named(&items, &rs)
            }
            .map_err(|r| ServiceError::BadRequest(format!("internal layout is ill-formed: {r}")))?;
            let mut stats = Stats::default();
            for (_, c) in &compiled {
                stats.min_content = stats.min_content.max(c.min_content);
                stats.max_content = stats.max_content.max(c.max_content);
                stats.chosen_content = stats.chosen_content.max(c.chosen_content);
                stats.height += c.height;
                stats.wrap_penalty += c.wrap_penalty;
                stats.degraded |= c.degraded;
            }
            let dump = req.dump.map(|stage| {
                compiled
                    .iter()
                    .map(|(name, c)| {
                        let body = dump_stage(c, stage);
                        match name {
                            Some(n) => format!("; {n}\n{body}"),
                            None => body,
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            LayoutResponse { svg, stats, diagnostics: Vec::new(), dump }
        }
    };
    resp.stats.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(resp)
}

pub fn dump_stage(c: &Compiled, stage: DumpStage) -> String {
    match stage {
        DumpStage::Immediate => print_immediate(&c.prepared.immediate),
        DumpStage::Aligned => print_aligned(&c.prepared.aligned),
        DumpStage::Wrapped => c.dump_wrapped(),
        DumpStage::Layout => print_layout(&c.layout),
    }
}

async fn layout_endpoint(body: Result<Json<LayoutRequest>, JsonRejection>) -> Result<Json<LayoutResponse>, ServiceError> {
    let Json(req) = body.map_err(|e| ServiceError::BadRequest(e.body_text()))?;
    let resp = tokio::task::spawn_blocking(move || handle(&req))
        .await
        .map_err(|e| ServiceError::BadRequest(format!("request failed: {e}")))??;
    Ok(Json(resp))
}

/// The service routes; static files come from `static_dir` when given.
pub fn router(static_dir: Option<PathBuf>) -> Router {
    let r = Router::new().route("/layout", post(layout_endpoint));
    match static_dir {
        Some(dir) => r.fallback_service(ServeDir::new(dir)),
        None => r,
    }
}

/// Static directory from `RAILYARD_STATIC_DIR`, if set.
pub fn static_dir_from_env() -> Option<PathBuf> {
    std::env::var_os("RAILYARD_STATIC_DIR").map(PathBuf::from)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    axum::serve(listener, router(static_dir_from_env())).await
}
