//! Preprocessing and serving commands.
//!
//! Every command works on a dataset directory (`--data`, default `.`); see
//! [`DatasetDir`] for its layout.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sensvol_core::evaluation::{autocorrelation, ConvergenceTracker};
use sensvol_core::grid::resample_trilinear;
use sensvol_core::sampling::{random_sample, saltelli_sample, sobol_sample};
use sensvol_core::sensitivity::delta::Bandwidth;
use sensvol_core::sensitivity::{compute_measure, DeltaConfig, DgsaConfig, MeasureConfig, SliceCount};
use sensvol_core::sfc::{data_driven_curve, hilbert_curve, scanline_curve, DistanceKind};
use sensvol_core::synthetic::{generate_synthetic, synthetic_params, SyntheticConfig};
use sensvol_core::{AuxField, CurveKind, Ensemble, GridDims, Measure, SensitivityFieldSet, SfcConfig, SfcCurve};

use crate::io::report::{
    write_coherency_csv, write_convergence_csv, CoherencyStudy, ConvergenceStudy, CurveScore, REPORT_FILE,
};
use crate::io::{self, DatasetDir, Report};
use crate::service;

/// Environment variable that overrides `serve --port`.
pub const PORT_ENV: &str = "SENSVOL_PORT";

#[derive(Debug, Parser)]
#[command(name = "sensvol", version, about = "Spatial sensitivity analysis of simulation ensembles")]
pub struct Cli {
    /// Dataset directory.
    #[arg(long, global = true, default_value = ".")]
    pub data: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the synthetic three-kernel ensemble.
    GenerateSynthetic(GenerateArgs),
    /// Compute one sensitivity volume per parameter.
    Sensitivity(SensitivityArgs),
    /// Build a space-filling curve over the sensitivity fields.
    Sfc(SfcArgs),
    /// Resample every volume of the ensemble onto another grid (trilinear).
    Resample(ResampleArgs),
    /// Coherency of the stored curve and the baseline curves.
    Evaluate(EvaluateArgs),
    /// Convergence of a measure over synthetic ensembles of growing size.
    Convergence(ConvergenceArgs),
    /// Serve view data over HTTP.
    Serve(ServeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplingArg {
    Saltelli,
    Sobol,
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// `N` for a cube or `NXxNYxNZ`.
    #[arg(long, default_value = "32", value_parser = parse_dims)]
    pub dims: GridDims,
    /// Run count; Saltelli sampling rounds it up to a multiple of 5.
    #[arg(long, default_value_t = 4096)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Upper bound of the uniform noise, 0 disables it.
    #[arg(long, default_value_t = 0.01)]
    pub noise: f64,
    #[arg(long, value_enum, default_value_t = SamplingArg::Saltelli)]
    pub sampling: SamplingArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Sobol,
    Delta,
    Dgsa,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Sobol => Measure::Sobol,
            MeasureArg::Delta => Measure::Delta,
            MeasureArg::Dgsa => Measure::Dgsa,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BandwidthArg {
    Silverman,
    Scott,
}

#[derive(Debug, Args)]
pub struct MeasureOptions {
    /// δ: slice count, automatic when omitted.
    #[arg(long)]
    pub slices: Option<usize>,
    /// δ: KDE bandwidth rule.
    #[arg(long, value_enum, default_value_t = BandwidthArg::Silverman)]
    pub bandwidth: BandwidthArg,
    /// DGSA: bootstrap seed.
    #[arg(long, default_value_t = 0)]
    pub bootstrap_seed: u64,
    /// DGSA: bootstrap draws per threshold.
    #[arg(long, default_value_t = 1000)]
    pub bootstrap_draws: usize,
    /// DGSA: compare CDFs of parameter ranks.
    #[arg(long)]
    pub rank_space: bool,
    /// DGSA: recompute every bootstrap threshold.
    #[arg(long)]
    pub no_cache: bool,
}

impl MeasureOptions {
    pub fn config(&self) -> MeasureConfig {
        let delta = DeltaConfig {
            slices: self.slices.map_or(SliceCount::Auto, SliceCount::Fixed),
            bandwidth: match self.bandwidth {
                BandwidthArg::Silverman => Bandwidth::Silverman,
                BandwidthArg::Scott => Bandwidth::Scott,
            },
            ..DeltaConfig::default()
        };
        let dgsa = DgsaConfig {
            seed: self.bootstrap_seed,
            bootstrap_draws: self.bootstrap_draws,
            rank_space: self.rank_space,
            cache_thresholds: !self.no_cache,
            ..DgsaConfig::default()
        };
        MeasureConfig { delta, dgsa }
    }

    fn settings(&self, measure: Measure) -> serde_json::Value {
        let cfg = self.config();
        match measure {
            Measure::Sobol => serde_json::json!({ "estimator": "saltelli-first-order" }),
            Measure::Delta => serde_json::json!({
                "slices": self.slices,
                "bandwidth": format!("{:?}", cfg.delta.bandwidth).to_lowercase(),
                "grid_points": cfg.delta.grid_points,
            }),
            Measure::Dgsa => serde_json::json!({
                "k_min": cfg.dgsa.k_min,
                "k_max": cfg.dgsa.k_max,
                "bootstrap_draws": cfg.dgsa.bootstrap_draws,
                "quantile": cfg.dgsa.quantile,
                "seed": cfg.dgsa.seed,
                "rank_space": cfg.dgsa.rank_space,
            }),
        }
    }
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[command(flatten)]
    pub options: MeasureOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistanceArg {
    L1,
    L2,
    Linf,
    Ssd,
    Cosine,
}

impl From<DistanceArg> for DistanceKind {
    fn from(d: DistanceArg) -> Self {
        match d {
            DistanceArg::L1 => DistanceKind::L1,
            DistanceArg::L2 => DistanceKind::L2,
            DistanceArg::Linf => DistanceKind::LInf,
            DistanceArg::Ssd => DistanceKind::Ssd,
            DistanceArg::Cosine => DistanceKind::Cosine,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Datadriven,
    Hilbert,
    Scanline,
}

#[derive(Debug, Args)]
pub struct SfcArgs {
    #[arg(long, value_enum, default_value_t = DistanceArg::L1)]
    pub distance: DistanceArg,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = KindArg::Datadriven)]
    pub kind: KindArg,
    /// Fields the data-driven curve follows.
    #[arg(long, value_enum, default_value_t = MeasureArg::Delta)]
    pub measure: MeasureArg,
    /// Reference point of the positional term, `x,y,z`.
    #[arg(long, default_value = "0,0,0", value_parser = parse_point)]
    pub ref_point: [f64; 3],
}

#[derive(Debug, Args)]
pub struct ResampleArgs {
    #[arg(long, value_parser = parse_dims)]
    pub dims: GridDims,
    /// Output dataset directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, default_value_t = sensvol_core::evaluation::DEFAULT_MAX_LAG)]
    pub max_lag: usize,
    /// Fields whose coherency is measured.
    #[arg(long, value_enum, default_value_t = MeasureArg::Delta)]
    pub measure: MeasureArg,
    /// Also build and score data-driven curves for every distance.
    #[arg(long)]
    pub all_distances: bool,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[arg(long, value_enum, default_value_t = MeasureArg::Sobol)]
    pub measure: MeasureArg,
    #[arg(long, default_value = "32", value_parser = parse_dims)]
    pub dims: GridDims,
    /// Target run counts; each becomes a Saltelli base of `ceil(target / 5)`.
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256,512,1024,2048,4096")]
    pub steps: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.01)]
    pub noise: f64,
    /// Output directory, `<data>/convergence` by default.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub options: MeasureOptions,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Listening port; the SENSVOL_PORT environment variable takes precedence.
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Measure shown by the views, the first available one by default.
    #[arg(long, value_enum)]
    pub measure: Option<MeasureArg>,
}

pub fn parse_dims(s: &str) -> Result<GridDims, String> {
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    let nums = parts.iter().map(|p| p.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let dims = match nums[..] {
        [n] => GridDims::cube(n),
        [x, y, z] => GridDims::new(x, y, z),
        _ => return Err(format!("expected N or NXxNYxNZ, got {s:?}")),
    };
    dims.map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let v = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    v.try_into().map_err(|_| format!("expected x,y,z, got {s:?}"))
}

/// Saltelli base size for a target run count with `n` parameters.
pub fn saltelli_base(target: usize, n: usize) -> usize {
    target.div_ceil(n + 2).max(2)
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let data = DatasetDir::new(&cli.data);
    match cli.command {
        Command::GenerateSynthetic(a) => generate(&data, &a),
        Command::Sensitivity(a) => sensitivity(&data, &a),
        Command::Sfc(a) => sfc(&data, &a),
        Command::Resample(a) => resample(&data, &a),
        Command::Evaluate(a) => evaluate(&data, &a),
        Command::Convergence(a) => convergence(&data, &a),
        Command::Serve(a) => serve(&data, &a),
    }
}

fn generate(data: &DatasetDir, a: &GenerateArgs) -> anyhow::Result<()> {
    let params = synthetic_params();
    let seed32 = a.seed as u32;
    let samples = match a.sampling {
        SamplingArg::Saltelli => {
            let base_n = saltelli_base(a.runs, params.len());
            if base_n * (params.len() + 2) != a.runs {
                eprintln!("note: Saltelli layout needs a multiple of {} runs, writing {}", params.len() + 2, base_n * 5);
            }
            saltelli_sample(&params, base_n, seed32)?
        }
        SamplingArg::Sobol => sobol_sample(&params, a.runs, seed32)?,
        SamplingArg::Random => random_sample(&params, a.runs, a.seed)?,
    };
    let cfg = SyntheticConfig { dims: a.dims, run_count: samples.run_count(), noise_max: a.noise, seed: a.seed };
    let ens = generate_synthetic(&cfg, &samples)?;
    let path = io::write_ensemble(&ens, data.root())?;
    println!("wrote {} runs on {} to {}", ens.run_count(), ens.dims(), path.display());
    Ok(())
}

fn load(data: &DatasetDir) -> anyhow::Result<Ensemble> {
    let path = data.manifest();
    io::load_ensemble(&path).with_context(|| format!("loading {}", path.display()))
}

fn load_fields(data: &DatasetDir, measure: Measure) -> anyhow::Result<SensitivityFieldSet> {
    let dir = data.sensitivity_dir(measure);
    io::read_fields(&dir).with_context(|| format!("{} fields not found; run `sensitivity --measure {}` first", measure.as_str(), measure.as_str()))
}

fn sensitivity(data: &DatasetDir, a: &SensitivityArgs) -> anyhow::Result<()> {
    let ens = load(data)?;
    let measure = Measure::from(a.measure);
    let start = Instant::now();
    let fields = compute_measure(&ens, measure, &a.options.config())?;
    let secs = start.elapsed().as_secs_f64();
    let dir = data.sensitivity_dir(measure);
    io::write_fields(&fields, &dir, a.options.settings(measure))?;
    let flagged = fields.flags.iter().filter(|&&f| f != 0).count();
    println!("{} on {} voxels x {} runs in {secs:.2} s, {flagged} voxels flagged", measure.as_str(), fields.voxel_count(), ens.run_count());
    for (i, name) in fields.param_names.iter().enumerate() {
        println!("  {name}: mean {:.4}", fields.mean(i));
    }
    println!("wrote {}", dir.display());
    Ok(())
}

pub fn build_curve(kind: CurveKind, fields: &SensitivityFieldSet, cfg: &SfcConfig) -> sensvol_core::Result<SfcCurve> {
    match kind {
        CurveKind::DataDriven => data_driven_curve(fields, cfg),
        CurveKind::Hilbert => hilbert_curve(fields.dims),
        CurveKind::Scanline => scanline_curve(fields.dims),
    }
}

fn sfc(data: &DatasetDir, a: &SfcArgs) -> anyhow::Result<()> {
    let kind = match a.kind {
        KindArg::Datadriven => CurveKind::DataDriven,
        KindArg::Hilbert => CurveKind::Hilbert,
        KindArg::Scanline => CurveKind::Scanline,
    };
    let cfg = SfcConfig { alpha: a.alpha, distance: a.distance.into(), ref_point: a.ref_point };
    let fields = load_fields(data, a.measure.into())?;
    let start = Instant::now();
    let curve = build_curve(kind, &fields, &cfg)?;
    io::write_curve(&curve, &data.curve())?;
    println!("{} curve over {} voxels in {:.2} s, wrote {}", kind.as_str(), curve.len(), start.elapsed().as_secs_f64(), data.curve().display());
    Ok(())
}

fn resample(data: &DatasetDir, a: &ResampleArgs) -> anyhow::Result<()> {
    let ens = load(data)?;
    let from = ens.dims();
    let volumes = ens.volumes().iter().map(|v| resample_trilinear(v, from, a.dims)).collect::<Result<Vec<_>, _>>()?;
    let aux = ens
        .aux()
        .iter()
        .map(|f| Ok(AuxField { name: f.name.clone(), values: resample_trilinear(&f.values, from, a.dims)? }))
        .collect::<sensvol_core::Result<Vec<_>>>()?;
    let out = Ensemble::new(ens.name(), a.dims, ens.pspace().clone(), volumes, aux)?;
    let path = io::write_ensemble(&out, &a.out)?;
    println!("resampled {} runs from {from} to {}, wrote {}", out.run_count(), a.dims, path.display());
    Ok(())
}

/// Coherencies and autocorrelations of one curve.
pub fn score_curve(
    label: &str,
    curve: &SfcCurve,
    fields: &SensitivityFieldSet,
    max_lag: usize,
) -> sensvol_core::Result<CurveScore> {
    let ref_point = curve.config().ref_point;
    let report = sensvol_core::evaluation::coherency_report(curve, fields, ref_point, max_lag, true)?;
    let dims = curve.dims();
    let t: Vec<f64> = curve.order().iter().map(|&v| dims.distance_to(v as usize, ref_point)).collect();
    let data_driven = curve.kind() == CurveKind::DataDriven;
    Ok(CurveScore {
        label: label.to_string(),
        curve: curve.kind(),
        distance: data_driven.then_some(curve.config().distance),
        alpha: data_driven.then_some(curve.config().alpha),
        value_coherency: report.value_coherency,
        positional_coherency: report.positional_coherency,
        field_acf: report.per_field_acf.unwrap_or_default(),
        positional_acf: autocorrelation(&t, max_lag)?.values,
    })
}

fn curve_label(c: &SfcCurve) -> String {
    match c.kind() {
        CurveKind::DataDriven => format!("datadriven-{}", c.config().distance.as_str()),
        k => k.as_str().to_string(),
    }
}

fn evaluate(data: &DatasetDir, a: &EvaluateArgs) -> anyhow::Result<()> {
    let measure = Measure::from(a.measure);
    let fields = load_fields(data, measure)?;
    let stored = io::read_curve(&data.curve()).context("no curve; run `sfc` first")?;
    if stored.dims() != fields.dims {
        bail!("curve grid {} does not match the {} fields on {}", stored.dims(), measure.as_str(), fields.dims);
    }
    let ref_point = stored.config().ref_point;
    let base_cfg = SfcConfig { ref_point, ..*stored.config() };
    let mut curves = vec![(format!("stored-{}", curve_label(&stored)), stored)];
    if a.all_distances {
        for d in DistanceKind::ALL {
            let cfg = SfcConfig { distance: d, ..base_cfg };
            let c = data_driven_curve(&fields, &cfg)?;
            curves.push((curve_label(&c), c));
        }
    }
    match hilbert_curve(fields.dims) {
        Ok(c) => curves.push(("hilbert".into(), SfcCurve::new(CurveKind::Hilbert, c.dims(), base_cfg, c.order().to_vec())?)),
        Err(e) => eprintln!("note: Hilbert baseline skipped: {e}"),
    }
    let s = scanline_curve(fields.dims)?;
    curves.push(("scanline".into(), SfcCurve::new(CurveKind::Scanline, s.dims(), base_cfg, s.order().to_vec())?));

    let mut scores = Vec::with_capacity(curves.len());
    for (label, c) in &curves {
        let s = score_curve(label, c, &fields, a.max_lag)?;
        println!("{label:>20}  value {:.4}  positional {:.4}", s.value_coherency, s.positional_coherency);
        scores.push(s);
    }
    let study = CoherencyStudy { measure, max_lag: a.max_lag, ref_point, curves: scores };
    let dir = data.evaluation_dir();
    write_coherency_csv(&study, &dir.join("coherency.csv"))?;
    io::write_report(&Report::Coherency(study), &dir)?;
    println!("wrote {}", dir.join(REPORT_FILE).display());
    Ok(())
}

fn convergence(data: &DatasetDir, a: &ConvergenceArgs) -> anyhow::Result<()> {
    if a.steps.len() < 2 {
        bail!("a convergence study needs at least two steps");
    }
    let measure = Measure::from(a.measure);
    let cfg = a.options.config();
    let params = synthetic_params();
    let mut tracker = ConvergenceTracker::new(measure);
    let (mut run_counts, mut seconds) = (Vec::new(), Vec::new());
    for &target in &a.steps {
        let base_n = saltelli_base(target, params.len());
        let samples = saltelli_sample(&params, base_n, a.seed as u32)?;
        let syn = SyntheticConfig { dims: a.dims, run_count: samples.run_count(), noise_max: a.noise, seed: a.seed };
        let ens = generate_synthetic(&syn, &samples)?;
        let start = Instant::now();
        let fields = compute_measure(&ens, measure, &cfg)?;
        let secs = start.elapsed().as_secs_f64();
        println!("{:>6} runs  {secs:.2} s", ens.run_count());
        run_counts.push(ens.run_count());
        seconds.push(secs);
        tracker.push(ens.run_count(), fields)?;
    }
    let report = tracker.finish()?;
    for s in &report.steps {
        println!("{:>6} -> {:>6}  mean |diff| {:.5}", s.previous_runs, s.runs, s.mean_abs_diff);
    }
    let study = ConvergenceStudy {
        measure,
        dims: a.dims.as_array(),
        seed: a.seed,
        noise_max: a.noise,
        run_counts,
        seconds,
        steps: report.steps,
    };
    let dir = a.out.clone().unwrap_or_else(|| data.root().join("convergence"));
    write_convergence_csv(&study, &dir.join("convergence.csv"))?;
    io::write_report(&Report::Convergence(study), &dir)?;
    println!("wrote {}", dir.join(REPORT_FILE).display());
    Ok(())
}

/// Variant name of the first library error in the chain, e.g. `OddDimension`.
pub fn error_code(e: &anyhow::Error) -> Option<String> {
    let debug = e.chain().find_map(|c| {
        if let Some(crate::Error::Core(core)) = c.downcast_ref::<crate::Error>() {
            return Some(format!("{core:?}"));
        }
        c.downcast_ref::<sensvol_core::Error>()
            .map(|core| format!("{core:?}"))
            .or_else(|| c.downcast_ref::<crate::Error>().map(|io| format!("{io:?}")))
    })?;
    Some(debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string())
}

/// Port from the environment if set, the flag otherwise.
pub fn effective_port(flag: u16) -> anyhow::Result<u16> {
    match std::env::var(PORT_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{PORT_ENV}={v:?} is not a port")),
        Err(_) => Ok(flag),
    }
}

fn serve(data: &DatasetDir, a: &ServeArgs) -> anyhow::Result<()> {
    let port = effective_port(a.port)?;
    let state = service::AppState::load(data, a.measure.map(Measure::from))?;
    if let Some(reason) = state.not_ready_reason() {
        eprintln!("warning: {reason}; view endpoints answer 409 until preprocessing is done");
    }
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind((a.host.as_str(), port)).await?;
        println!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, service::router(state))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
