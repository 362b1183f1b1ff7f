//! HTTP/JSON service over one preprocessed dataset.
//!
//! The service loads the ensemble, the sensitivity fields and the curve at
//! startup and only runs view-data operations per request. A dataset
//! without fields or curve is still served, but every view endpoint
//! answers 409 until preprocessing has been run.

mod dto;
mod error;
mod handlers;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::routing::{get, post};
use axum::Router;

use sensvol_core::viewdata::{axis_order_by_mean, Selection};
use sensvol_core::{Ensemble, Measure, SensitivityFieldSet, SfcCurve};

pub use dto::*;
pub use error::ApiError;

use crate::io::{self, DatasetDir};

/// Version of every response body.
pub const SCHEMA_VERSION: u32 = 1;

/// Horizon graphs shown before the client picks `m`.
pub const DEFAULT_HORIZONS: usize = 3;

/// Fields and curve of the active measure.
#[derive(Debug)]
pub struct Prepared {
    pub fields: SensitivityFieldSet,
    pub curve: SfcCurve,
}

#[derive(Debug)]
pub struct Session {
    pub axis_order: Option<Vec<usize>>,
    pub m: usize,
    pub selections: HashMap<u64, Arc<Selection>>,
    pub next_id: u64,
}

#[derive(Debug)]
pub struct Inner {
    pub ensemble: Ensemble,
    pub measures: Vec<Measure>,
    pub measure: Option<Measure>,
    pub prepared: Result<Prepared, String>,
    pub session: RwLock<Session>,
}

#[derive(Clone, Debug)]
pub struct AppState(pub Arc<Inner>);

impl AppState {
    /// Loads the ensemble (required) and, if present, the fields of
    /// `measure` (δ when available, else the first one found) and the curve.
    pub fn load(data: &DatasetDir, measure: Option<Measure>) -> crate::Result<Self> {
        let ensemble = io::load_ensemble(&data.manifest())?;
        let measures = data.available_measures();
        let measure = measure.or_else(|| {
            if measures.contains(&Measure::Delta) {
                Some(Measure::Delta)
            } else {
                measures.first().copied()
            }
        });
        let prepared = prepare(data, &ensemble, measure);
        Ok(Self::from_parts(ensemble, measures, measure, prepared))
    }

    pub fn from_parts(
        ensemble: Ensemble,
        measures: Vec<Measure>,
        measure: Option<Measure>,
        prepared: Result<Prepared, String>,
    ) -> Self {
        let m = prepared.as_ref().map_or(0, |p| p.fields.field_count().min(DEFAULT_HORIZONS));
        let session = Session { axis_order: None, m, selections: HashMap::new(), next_id: 1 };
        Self(Arc::new(Inner { ensemble, measures, measure, prepared, session: RwLock::new(session) }))
    }

    pub fn not_ready_reason(&self) -> Option<&str> {
        self.0.prepared.as_ref().err().map(String::as_str)
    }

    pub(crate) fn prepared(&self) -> Result<&Prepared, ApiError> {
        self.0.prepared.as_ref().map_err(ApiError::not_ready)
    }

    /// Session axis order, or descending mean.
    pub(crate) fn axis_order(&self, p: &Prepared) -> Vec<usize> {
        let s = self.0.session.read().unwrap();
        s.axis_order.clone().unwrap_or_else(|| axis_order_by_mean(&p.fields))
    }
}

fn prepare(data: &DatasetDir, ens: &Ensemble, measure: Option<Measure>) -> Result<Prepared, String> {
    let measure = measure.ok_or("no sensitivity fields have been computed")?;
    let fields = io::read_fields(&data.sensitivity_dir(measure)).map_err(|e| format!("{} fields: {e}", measure.as_str()))?;
    let curve = io::read_curve(&data.curve()).map_err(|e| format!("curve: {e}"))?;
    if fields.dims != ens.dims() || curve.dims() != ens.dims() {
        return Err(format!("fields on {} and curve on {} do not match the ensemble grid {}", fields.dims, curve.dims(), ens.dims()));
    }
    if fields.param_names != ens.pspace().names() {
        return Err("field names do not match the ensemble parameters".into());
    }
    Ok(Prepared { fields, curve })
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/meta", get(handlers::meta))
        .route("/api/pcp", get(handlers::pcp))
        .route("/api/sensitivity-view", get(handlers::sensitivity_view))
        .route("/api/selection", post(handlers::create_selection))
        .route("/api/selection/{id}", get(handlers::selection_info))
        .route("/api/heatmap", get(handlers::heatmap))
        .route("/api/mesh", get(handlers::mesh))
        .route("/api/axis-order", post(handlers::axis_order))
        .with_state(state)
}
