use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::json;
use thiserror::Error;

use agroline_core::ingest::IngestError;

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("{file}: {source}")]
    Ingest {
        file: &'static str,
        #[source]
        source: IngestError,
    },
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("invalid subdivision: {0}")]
    InvalidChord(String),
    #[error("no subdivision pairs proposed yet")]
    NothingToSave,
    #[error("internal error: {0}")]
    Internal(String),
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            Self::Ingest { .. } | Self::BadRequest(_) => StatusCode::BAD_REQUEST,
            Self::UnknownSession(_) => StatusCode::NOT_FOUND,
            Self::InvalidChord(_) => StatusCode::UNPROCESSABLE_ENTITY,
            Self::NothingToSave => StatusCode::CONFLICT,
            Self::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.to_string() });
        if let Self::Ingest { file, source } = &self {
            body["file"] = json!(file);
            body["line"] = json!(source.line());
        }
        (self.status(), Json(body)).into_response()
    }
}
