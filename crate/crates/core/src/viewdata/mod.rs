//! Payloads for the linked views: parallel coordinates, horizon graphs,
//! selections, dependency heatmaps and selection meshes.

pub mod colormap;
pub mod heatmap;
pub mod horizon;
pub mod mesh;
pub mod pcp;
pub mod selection;
pub mod subsample;
pub mod view;

pub use colormap::{magma, MAGMA, MAGMA_NAME};
pub use heatmap::{heatmap_aggregate, nn_fill, HeatmapGrid, DEFAULT_CURVE_BINS, DEFAULT_PARAM_BINS};
pub use horizon::{band_of, horizon_bands, Band, BandRamp, HorizonSeries};
pub use mesh::{decode_binary, encode_binary, selection_mesh, Mesh};
pub use pcp::{axis_order_by_mean, pcp_payload, AuxAxis, PcpAxis, PcpPayload};
pub use selection::{resolve_selection, Brush, CurveInterval, Selection};
pub use subsample::{monte_carlo_subsample, DEFAULT_SAMPLE_COUNT};
pub use view::{sensitivity_view, HorizonTrack, LineSeries, SensitivityView};
