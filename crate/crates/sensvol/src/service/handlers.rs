use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap};
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};

use sensvol_core::viewdata::{
    self as vd, Brush, CurveInterval, Selection, DEFAULT_CURVE_BINS, DEFAULT_PARAM_BINS, DEFAULT_SAMPLE_COUNT, MAGMA,
    MAGMA_NAME,
};

use super::dto::*;
use super::{ApiError, AppState, Prepared, SCHEMA_VERSION};

type ApiResult<T> = Result<T, ApiError>;

fn versioned<T: Serialize>(body: T) -> Response {
    Json(Versioned { schema_version: SCHEMA_VERSION, body }).into_response()
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> ApiResult<T> {
    q.map(|Query(t)| t).map_err(|e| ApiError::bad_request(e.body_text()))
}

/// Runs view-data work off the async workers.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> ApiResult<T> + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f).await.map_err(ApiError::internal)?
}

fn resolve_field(p: &Prepared, r: &FieldRef) -> Option<usize> {
    match r {
        FieldRef::Index(i) => (*i < p.fields.field_count()).then_some(*i),
        FieldRef::Name(n) => p.fields.field_index(n),
    }
}

fn lookup_selection(state: &AppState, id: Option<u64>) -> ApiResult<Option<Arc<Selection>>> {
    let Some(id) = id else { return Ok(None) };
    let s = state.0.session.read().unwrap();
    s.selections
        .get(&id)
        .cloned()
        .map(Some)
        .ok_or_else(|| ApiError::not_found("unknown_selection", format!("no selection with id {id}")))
}

pub async fn meta(State(state): State<AppState>) -> Response {
    let inner = &state.0;
    let ens = &inner.ensemble;
    let curve = inner.prepared.as_ref().ok().map(|p| {
        let c = p.curve.config();
        CurveMeta { kind: p.curve.kind(), alpha: c.alpha, distance: c.distance, ref_point: c.ref_point, length: p.curve.len() }
    });
    let (m, axis_order) = {
        let s = inner.session.read().unwrap();
        (s.m, s.axis_order.clone())
    };
    versioned(Meta {
        name: ens.name().to_string(),
        dims: ens.dims().as_array(),
        runs: ens.run_count(),
        parameters: ens.pspace().params().to_vec(),
        aux: ens.aux().iter().map(|a| a.name.clone()).collect(),
        measures: inner.measures.clone(),
        measure: inner.measure,
        curve,
        preprocessed: inner.prepared.is_ok(),
        not_ready_reason: state.not_ready_reason().map(str::to_string),
        m,
        axis_order,
        defaults: Defaults { count: DEFAULT_SAMPLE_COUNT, seed: 0, param_bins: DEFAULT_PARAM_BINS, curve_bins: DEFAULT_CURVE_BINS },
    })
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PcpQuery {
    #[serde(default)]
    filter_pct: f64,
    #[serde(default)]
    seed: u64,
    count: Option<usize>,
    selection: Option<u64>,
}

pub async fn pcp(State(state): State<AppState>, q: Result<Query<PcpQuery>, QueryRejection>) -> ApiResult<Response> {
    let q = query(q)?;
    if !(0.0..=100.0).contains(&q.filter_pct) {
        return Err(ApiError::bad_request("filterPct must lie in [0, 100]"));
    }
    let sel = lookup_selection(&state, q.selection)?;
    blocking(move || {
        let p = state.prepared()?;
        let fields = &p.fields;
        let sample = vd::monte_carlo_subsample(fields.voxel_count(), q.count.unwrap_or(DEFAULT_SAMPLE_COUNT), q.seed);
        let order = state.0.session.read().unwrap().axis_order.clone();
        let payload = vd::pcp_payload(fields, state.0.ensemble.aux(), &sample, q.filter_pct, order.as_deref())?;
        let selected = sel.map(|s| {
            let mask = s.mask(fields.voxel_count());
            payload.voxels.iter().map(|&v| mask[v as usize]).collect()
        });
        Ok(versioned(PcpResponse { selected, payload }))
    })
    .await
}

#[derive(Debug, Deserialize)]
pub struct ViewQuery {
    m: Option<usize>,
    #[serde(default)]
    seed: u64,
    count: Option<usize>,
}

pub async fn sensitivity_view(
    State(state): State<AppState>,
    q: Result<Query<ViewQuery>, QueryRejection>,
) -> ApiResult<Response> {
    let q = query(q)?;
    blocking(move || {
        let p = state.prepared()?;
        let n = p.fields.field_count();
        let m = {
            let mut s = state.0.session.write().unwrap();
            if let Some(m) = q.m {
                if m > n {
                    return Err(ApiError::bad_request(format!("m = {m} exceeds the {n} fields")));
                }
                s.m = m;
            }
            s.m
        };
        let order = state.axis_order(p);
        let sample = vd::monte_carlo_subsample(p.fields.voxel_count(), q.count.unwrap_or(DEFAULT_SAMPLE_COUNT), q.seed);
        let view = vd::sensitivity_view(&p.fields, &p.curve, &sample, m, &order)?;
        Ok(versioned(view))
    })
    .await
}

fn parse_body<T: for<'de> Deserialize<'de> + Default>(body: &Bytes) -> ApiResult<T> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(T::default());
    }
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))
}

pub async fn create_selection(State(state): State<AppState>, body: Bytes) -> ApiResult<Response> {
    let req: SelectionBody = parse_body(&body)?;
    blocking(move || {
        let p = state.prepared()?;
        let mut brushes = Vec::with_capacity(req.pcp_brushes.len());
        for b in &req.pcp_brushes {
            let field = resolve_field(p, &b.axis).ok_or_else(|| ApiError::bad_request(format!("unknown axis {}", b.axis)))?;
            if !(b.lo.is_finite() && b.hi.is_finite() && b.lo <= b.hi) {
                return Err(ApiError::bad_request(format!("brush on axis {} needs finite lo <= hi", b.axis)));
            }
            brushes.push(Brush { field, lo: b.lo, hi: b.hi });
        }
        let intervals: Vec<CurveInterval> = req.sfc_intervals.clone();
        if let Some(iv) = intervals.iter().find(|iv| iv.start > iv.end || iv.start as usize >= p.curve.len()) {
            return Err(ApiError::bad_request(format!("curve interval {}..{} is outside the curve", iv.start, iv.end)));
        }
        let sel = vd::resolve_selection(&brushes, &intervals, &p.fields, Some(&p.curve)).map_err(ApiError::bad_request)?;
        let count = sel.len();
        let mut s = state.0.session.write().unwrap();
        let id = s.next_id;
        s.next_id += 1;
        s.selections.insert(id, Arc::new(sel));
        Ok(versioned(SelectionCreated { id, count }))
    })
    .await
}

pub async fn selection_info(State(state): State<AppState>, Path(id): Path<u64>) -> ApiResult<Response> {
    let sel = lookup_selection(&state, Some(id))?.expect("id given");
    Ok(versioned(SelectionInfo { id, count: sel.len(), brushes: sel.brushes.clone(), intervals: sel.intervals.clone() }))
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HeatmapQuery {
    param: String,
    selection: Option<u64>,
    #[serde(default)]
    fill: u8,
    param_bins: Option<usize>,
    curve_bins: Option<usize>,
}

pub async fn heatmap(State(state): State<AppState>, q: Result<Query<HeatmapQuery>, QueryRejection>) -> ApiResult<Response> {
    let q = query(q)?;
    if q.fill > 1 {
        return Err(ApiError::bad_request("fill must be 0 or 1"));
    }
    let sel = lookup_selection(&state, q.selection)?;
    blocking(move || {
        let p = state.prepared()?;
        let ens = &state.0.ensemble;
        let by_name = ens.pspace().params().iter().position(|s| s.name == q.param);
        let by_index = q.param.parse::<usize>().ok().filter(|&i| i < ens.pspace().param_count());
        let param = by_name
            .or(by_index)
            .ok_or_else(|| ApiError::not_found("unknown_param", format!("no parameter {:?}", q.param)))?;
        let all: Vec<u32>;
        let voxels = match &sel {
            Some(s) => &s.voxels,
            None => {
                all = (0..ens.dims().voxel_count() as u32).collect();
                &all
            }
        };
        let grid = vd::heatmap_aggregate(
            ens,
            &p.curve,
            voxels,
            param,
            q.param_bins.unwrap_or(DEFAULT_PARAM_BINS),
            q.curve_bins.unwrap_or(DEFAULT_CURVE_BINS),
        )?;
        let grid = if q.fill == 1 { vd::nn_fill(&grid)? } else { grid };
        Ok(versioned(HeatmapResponse {
            selection: q.selection,
            filled_in: q.fill == 1,
            value_range: grid.value_range(),
            grid,
            colormap: Colormap { name: MAGMA_NAME, table: MAGMA.to_vec() },
        }))
    })
    .await
}

#[derive(Debug, Deserialize)]
pub struct MeshQuery {
    selection: Option<u64>,
}

pub const BINARY_MESH: &str = "application/octet-stream";

pub async fn mesh(
    State(state): State<AppState>,
    headers: HeaderMap,
    q: Result<Query<MeshQuery>, QueryRejection>,
) -> ApiResult<Response> {
    let q = query(q)?;
    let sel = lookup_selection(&state, q.selection)?;
    let binary = headers
        .get(header::ACCEPT)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.split(',').any(|t| t.trim().starts_with(BINARY_MESH)));
    blocking(move || {
        state.prepared()?;
        let dims = state.0.ensemble.dims();
        let voxels: Vec<u32> = match &sel {
            Some(s) => s.voxels.clone(),
            None => (0..dims.voxel_count() as u32).collect(),
        };
        let mesh = vd::selection_mesh(dims, &voxels)?;
        if binary {
            let headers = [
                (header::CONTENT_TYPE, BINARY_MESH.to_string()),
                (header::HeaderName::from_static("x-schema-version"), SCHEMA_VERSION.to_string()),
            ];
            return Ok((headers, vd::encode_binary(&mesh)).into_response());
        }
        Ok(versioned(MeshResponse {
            selection: q.selection,
            voxel_count: voxels.len(),
            triangle_count: mesh.triangle_count(),
            mesh,
        }))
    })
    .await
}

pub async fn axis_order(State(state): State<AppState>, body: Bytes) -> ApiResult<Response> {
    let req: AxisOrderBody =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))?;
    let p = state.prepared()?;
    let mut order = Vec::with_capacity(p.fields.field_count());
    for r in &req.order {
        let i = resolve_field(p, r).ok_or_else(|| ApiError::bad_request(format!("unknown axis {r}")))?;
        if order.contains(&i) {
            return Err(ApiError::bad_request(format!("axis {r} listed twice")));
        }
        order.push(i);
    }
    // unlisted axes keep their mean order behind the listed ones
    for i in vd::axis_order_by_mean(&p.fields) {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    state.0.session.write().unwrap().axis_order = Some(order.clone());
    let names = order.iter().map(|&i| p.fields.param_names[i].clone()).collect();
    Ok(versioned(AxisOrder { order, names }))
}
