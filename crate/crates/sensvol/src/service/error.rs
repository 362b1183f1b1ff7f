use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;

use super::SCHEMA_VERSION;

/// Error body: `{"schema_version", "error": {"code", "message"}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl ToString) -> Self {
        Self { status, code, message: message.to_string() }
    }

    pub fn bad_request(message: impl ToString) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    pub fn not_found(code: &'static str, message: impl ToString) -> Self {
        Self::new(StatusCode::NOT_FOUND, code, message)
    }

    pub fn not_ready(message: impl ToString) -> Self {
        Self::new(StatusCode::CONFLICT, "not_preprocessed", message)
    }

    pub fn internal(message: impl ToString) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "error": { "code": self.code, "message": self.message },
        });
        (self.status, Json(body)).into_response()
    }
}

/// Core errors caused by request parameters are the client's fault.
impl From<sensvol_core::Error> for ApiError {
    fn from(e: sensvol_core::Error) -> Self {
        use sensvol_core::Error as E;
        match e {
            E::BadParamIndex(_) => Self::not_found("unknown_param", e),
            E::InvalidConfig(_)
            | E::IndexOutOfBounds { .. }
            | E::EmptySelection
            | E::AllAxesFiltered
            | E::AllEmpty
            | E::NegativeValue(_) => Self::bad_request(e),
            e => Self::internal(e),
        }
    }
}
