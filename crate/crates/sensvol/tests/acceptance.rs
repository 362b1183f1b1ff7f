//! Acceptance suite on the synthetic ensemble. Runs every criterion in
//! order, prints one PASS/FAIL line each and exits non-zero on any failure.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use sensvol::cli::saltelli_base;
use sensvol::io::report::{read_csv, AcfRow};
use sensvol::io::{self, DatasetDir, Report};
use sensvol_core::evaluation::{positional_coherency, value_coherency, ConvergenceTracker, DEFAULT_MAX_LAG};
use sensvol_core::sampling::saltelli_sample;
use sensvol_core::sensitivity::dgsa::{bootstrap_threshold, cdf_distance, natural_breaks, BootstrapConfig, SortedSample, ThresholdCache};
use sensvol_core::sensitivity::{compute_measure, dgsa_volume, sobol_first_order, DgsaConfig, MeasureConfig};
use sensvol_core::sfc::{data_driven_curve, data_driven_from_fields, hilbert_curve, scanline_curve, DistanceKind};
use sensvol_core::synthetic::{generate_synthetic, synthetic_params, SyntheticConfig};
use sensvol_core::viewdata::{decode_binary, heatmap_aggregate, horizon_bands, nn_fill, resolve_selection, Brush, CurveInterval, HeatmapGrid};
use sensvol_core::{CurveKind, Ensemble, Error, GridDims, Measure, ParameterSpec, SensitivityFieldSet, SfcConfig, SfcCurve};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Synthetic ensemble at `dims` with the Saltelli design closest to `runs`.
fn synthetic(dims: GridDims, runs: usize, noise: f64, seed: u64) -> Ensemble {
    let ps = saltelli_sample(&synthetic_params(), saltelli_base(runs, 3), seed as u32).unwrap();
    let cfg = SyntheticConfig { dims, run_count: ps.run_count(), noise_max: noise, seed };
    generate_synthetic(&cfg, &ps).unwrap()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Linearly interpolated quantile.
fn quantile(v: &[f64], q: f64) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let pos = q * (s.len() - 1) as f64;
    let (i, t) = (pos.floor() as usize, pos.fract());
    if i + 1 < s.len() {
        s[i] * (1.0 - t) + s[i + 1] * t
    } else {
        s[i]
    }
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |best, i| if v[i] > v[best] { i } else { best })
}

/// Sensitivity fields of the 32³ Saltelli-4096 ensemble (base 820, 4100 runs).
struct Fields {
    sobol: SensitivityFieldSet,
    delta: SensitivityFieldSet,
    dgsa: SensitivityFieldSet,
}

fn fields_32() -> Fields {
    let t = Instant::now();
    let ens = synthetic(GridDims::cube(32).unwrap(), 4096, 0.01, 0);
    let cfg = MeasureConfig::default();
    let f = Fields {
        sobol: compute_measure(&ens, Measure::Sobol, &cfg).unwrap(),
        delta: compute_measure(&ens, Measure::Delta, &cfg).unwrap(),
        dgsa: compute_measure(&ens, Measure::Dgsa, &cfg).unwrap(),
    };
    println!("fixture: 32x32x32 synthetic, {} runs, three measures in {:.1} s", ens.run_count(), t.elapsed().as_secs_f64());
    f
}

fn criterion_1(f: &Fields) -> Outcome {
    let delta = &f.delta.fields[2];
    let (m, p99) = (mean(delta), quantile(delta, 0.99));
    let dgsa = &f.dgsa.fields[2];
    let frac = dgsa.iter().filter(|&&s| s > 1.0).count() as f64 / dgsa.len() as f64;
    check(
        m < 0.05 && p99 < 0.15 && frac < 0.01,
        format!("delta P3 mean {m:.4} (< 0.05), p99 {p99:.4} (< 0.15); DGSA P3 share > 1 {:.3}% (< 1%)", frac * 100.0),
    )
}

fn criterion_2(f: &Fields) -> Outcome {
    let v = f.delta.dims.index(7, 7, 7);
    let at = |s: &SensitivityFieldSet| -> Vec<f64> { s.fields.iter().map(|x| x[v]).collect() };
    let (s, d, g) = (at(&f.sobol), at(&f.delta), at(&f.dgsa));
    let ranked = argmax(&s) == 0 && argmax(&d) == 0 && argmax(&g) == 0;
    check(
        (0.9..=1.1).contains(&s[0]) && d[0] > 0.3 && g[0] > 1.0 && ranked,
        format!("at (7,7,7): Sobol {:.3?}, delta {:.3?}, DGSA {:.3?}; P1 first in all: {ranked}", s, d, g),
    )
}

fn criterion_3() -> Outcome {
    let params: Vec<_> = (1..=3).map(|i| ParameterSpec::new(format!("x{i}"), -PI, PI)).collect();
    let base = 16384;
    let ps = saltelli_sample(&params, base, 0).unwrap();
    let (a, b) = (7.0, 0.1);
    let y: Vec<f64> = (0..ps.run_count())
        .map(|r| {
            let x = ps.row(r);
            x[0].sin() + a * x[1].sin().powi(2) + b * x[2].powi(4) * x[0].sin()
        })
        .collect();
    let s = sobol_first_order(&y, 3, base).unwrap();
    // closed-form partial variances
    let v1 = 0.5 * (1.0 + b * PI.powi(4) / 5.0).powi(2);
    let v2 = a * a / 8.0;
    let v13 = b * b * PI.powi(8) * (1.0 / 18.0 - 1.0 / 50.0);
    let total = v1 + v2 + v13;
    let exact = [v1 / total, v2 / total, 0.0];
    let err = (0..3).map(|i| (s[i] - exact[i]).abs()).fold(0.0, f64::max);
    check(err <= 0.02, format!("S = {:.4?} vs {:.4?}, max error {err:.4} (<= 0.02)", s, exact))
}

fn criterion_4() -> Outcome {
    let dims = GridDims::cube(32).unwrap();
    let targets = [16, 32, 64, 128, 256, 512, 1024, 2048, 4096];
    let cfg = MeasureConfig::default();
    let mut sobol = ConvergenceTracker::new(Measure::Sobol);
    let mut delta = ConvergenceTracker::new(Measure::Delta);
    for &t in &targets {
        let ens = synthetic(dims, t, 0.01, 0);
        sobol.push(ens.run_count(), compute_measure(&ens, Measure::Sobol, &cfg).unwrap()).unwrap();
        if t <= 512 {
            delta.push(ens.run_count(), compute_measure(&ens, Measure::Delta, &cfg).unwrap()).unwrap();
        }
    }
    let (s, d) = (sobol.finish().unwrap(), delta.finish().unwrap());
    let sd: Vec<f64> = s.steps.iter().map(|x| x.mean_abs_diff).collect();
    let dd: Vec<f64> = d.steps.iter().map(|x| x.mean_abs_diff).collect();
    let ratio = sd[0] / sd[sd.len() - 1];
    let below = dd.iter().zip(&sd).all(|(d, s)| d < s);
    check(
        ratio >= 5.0 && below,
        format!("Sobol mean |diff| {:.4?}, first/last {ratio:.1} (>= 5); delta {:.4?} below Sobol: {below}", sd, dd),
    )
}

/// Exact curve invariants from coordinates.
fn curve_ok(c: &SfcCurve, dims: GridDims) -> Result<(), String> {
    let v = dims.voxel_count();
    let mut seen = vec![false; v];
    for &x in c.order() {
        if x as usize >= v || std::mem::replace(&mut seen[x as usize], true) {
            return Err(format!("{:?} on {dims}: not a permutation", c.kind()));
        }
    }
    if c.order().len() != v {
        return Err(format!("{:?} on {dims}: wrong length", c.kind()));
    }
    let xyz = |i: u32| {
        let i = i as usize;
        [i % dims.nx, (i / dims.nx) % dims.ny, i / (dims.nx * dims.ny)]
    };
    let step = |a: u32, b: u32| {
        let (p, q) = (xyz(a), xyz(b));
        (0..3).map(|k| p[k].abs_diff(q[k])).sum::<usize>() == 1
    };
    if !c.order().windows(2).all(|w| step(w[0], w[1])) {
        return Err(format!("{:?} on {dims}: non-adjacent step", c.kind()));
    }
    if c.kind() == CurveKind::DataDriven && !step(c.order()[0], c.order()[v - 1]) {
        return Err(format!("{:?} on {dims}: cycle does not close", c.kind()));
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let grids = [(4, 4, 4), (8, 8, 8), (16, 16, 16), (32, 32, 32), (6, 4, 2)];
    let mut checked = 0;
    for (x, y, z) in grids {
        let dims = GridDims::new(x, y, z).unwrap();
        let fields: Vec<Vec<f64>> = (0..3).map(|_| (0..dims.voxel_count()).map(|_| rng.random()).collect()).collect();
        for distance in DistanceKind::ALL {
            let cfg = SfcConfig { distance, alpha: rng.random(), ref_point: [0.0; 3] };
            curve_ok(&data_driven_from_fields(dims, &fields, &cfg).map_err(|e| e.to_string())?, dims)?;
            checked += 1;
        }
        curve_ok(&scanline_curve(dims).map_err(|e| e.to_string())?, dims)?;
        checked += 1;
        match hilbert_curve(dims) {
            Ok(c) => {
                curve_ok(&c, dims)?;
                checked += 1;
            }
            Err(Error::UnsupportedDims(_)) if x != y || y != z => {}
            Err(e) => return Err(format!("Hilbert on {dims}: {e}")),
        }
    }
    Ok(format!("{checked} curves valid; Hilbert on 6x4x2 reports UnsupportedDims"))
}

fn criterion_6(f: &Fields) -> Outcome {
    let dims = f.delta.dims;
    let lag = DEFAULT_MAX_LAG;
    let score = |c: &SfcCurve| {
        (value_coherency(c, &f.delta, lag).unwrap(), positional_coherency(c, [0.0; 3], lag).unwrap())
    };
    let mut dd = Vec::new();
    for distance in DistanceKind::ALL {
        let cfg = SfcConfig { distance, ..SfcConfig::default() };
        dd.push((distance, score(&data_driven_curve(&f.delta, &cfg).unwrap())));
    }
    let hil = score(&hilbert_curve(dims).unwrap());
    let scan = score(&scanline_curve(dims).unwrap());
    let others: Vec<(f64, f64)> = dd.iter().map(|d| d.1).chain([hil]).collect();
    let scan_worst = others.iter().all(|o| scan.0 < o.0 && scan.1 < o.1);
    let hil_best_pos = dd.iter().all(|d| hil.1 > d.1 .1);
    let l1 = dd[0].1;
    let l1_beats_hil = l1.0 > hil.0;
    for (k, (v, _)) in &dd[1..] {
        if l1.0 + 0.01 < *v {
            println!("warning: criterion 6 soft check: L1 value coherency {:.4} below {} {v:.4}", l1.0, k.as_str());
        }
    }
    let table: Vec<String> = dd
        .iter()
        .map(|(k, s)| format!("{} {:.3}/{:.3}", k.as_str(), s.0, s.1))
        .chain([format!("hilbert {:.3}/{:.3}", hil.0, hil.1), format!("scanline {:.3}/{:.3}", scan.0, scan.1)])
        .collect();
    check(
        scan_worst && hil_best_pos && l1_beats_hil,
        format!(
            "value/positional: {}; scanline worst {scan_worst}, Hilbert best positional {hil_best_pos}, L1 > Hilbert value {l1_beats_hil}",
            table.join(", ")
        ),
    )
}

fn ssq(values: &[f64], labels: &[usize]) -> f64 {
    let k = labels.iter().max().unwrap() + 1;
    (0..k)
        .map(|c| {
            let group: Vec<f64> = values.iter().zip(labels).filter(|(_, &l)| l == c).map(|(&v, _)| v).collect();
            let m = mean(&group);
            group.iter().map(|v| (v - m).powi(2)).sum::<f64>()
        })
        .sum()
}

/// Smallest within-cluster sum of squares over every contiguous split.
fn exhaustive_ssq(values: &[f64], k: usize) -> f64 {
    fn rec(values: &[f64], start: usize, k: usize) -> f64 {
        if k == 1 {
            let g = &values[start..];
            let m = mean(g);
            return g.iter().map(|v| (v - m).powi(2)).sum();
        }
        (start + 1..=values.len() - (k - 1))
            .map(|cut| {
                let g = &values[start..cut];
                let m = mean(g);
                g.iter().map(|v| (v - m).powi(2)).sum::<f64>() + rec(values, cut, k - 1)
            })
            .fold(f64::INFINITY, f64::min)
    }
    rec(values, 0, k)
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut cases = 0;
    while cases < 1000 {
        let n = rng.random_range(2..=12);
        let coarse = rng.random_bool(0.5);
        let mut values: Vec<f64> = (0..n)
            .map(|_| if coarse { rng.random_range(0..6) as f64 } else { rng.random_range(-3.0..3.0) })
            .collect();
        values.sort_by(f64::total_cmp);
        let mut distinct = values.clone();
        distinct.dedup();
        if distinct.len() < 2 {
            continue;
        }
        let k = rng.random_range(2..=distinct.len());
        let labels = natural_breaks(&values, k).map_err(|e| e.to_string())?;
        let (got, best) = (ssq(&values, &labels), exhaustive_ssq(&values, k));
        if got > best + 1e-9 * (1.0 + best) {
            return Err(format!("natural breaks {got} vs exhaustive {best} on {values:?}, k={k}"));
        }
        cases += 1;
    }

    let all: Vec<f64> = (0..4096).map(|_| rng.random()).collect();
    let mut sorted = all.clone();
    sorted.sort_by(f64::total_cmp);
    let d = cdf_distance(&sorted[2048..], &all, (0.0, 1.0)).unwrap();
    if (d - 0.25).abs() > 0.02 {
        return Err(format!("top-half CDF distance {d:.4}, expected 0.25"));
    }

    // a small ensemble keeps the uncached run short
    let ens = synthetic(GridDims::cube(8).unwrap(), 200, 0.01, 3);
    let on = dgsa_volume(&ens, &DgsaConfig { cache_thresholds: true, ..Default::default() }).unwrap();
    let off = dgsa_volume(&ens, &DgsaConfig { cache_thresholds: false, ..Default::default() }).unwrap();
    let same_volume = on.fields.iter().flatten().zip(off.fields.iter().flatten()).all(|(a, b)| a.to_bits() == b.to_bits())
        && on.flags == off.flags;
    let sample = SortedSample::new(sorted);
    let cache = ThresholdCache::new(true);
    let bcfg = BootstrapConfig::default();
    let same_threshold = [1, 10, 500, 2048, 3000, 4095].iter().all(|&c| {
        let cold = bootstrap_threshold(&sample, 0, c, &bcfg, None);
        let warm = bootstrap_threshold(&sample, 0, c, &bcfg, Some(&cache));
        let hit = bootstrap_threshold(&sample, 0, c, &bcfg, Some(&cache));
        cold.to_bits() == warm.to_bits() && warm.to_bits() == hit.to_bits()
    });
    check(
        same_volume && same_threshold,
        format!(
            "{cases} natural-breaks cases optimal; top-half CDF distance {d:.4}; cache on/off identical: volume {same_volume}, thresholds {same_threshold}"
        ),
    )
}

fn grid(rows: usize, cols: usize, cells: &[(usize, usize, f64)]) -> HeatmapGrid {
    let mut values = vec![f64::NAN; rows * cols];
    let mut filled = vec![false; rows * cols];
    for &(r, c, v) in cells {
        values[r * cols + c] = v;
        filled[r * cols + c] = true;
    }
    HeatmapGrid {
        param: "p".into(),
        param_index: 0,
        param_range: [0.0, 1.0],
        rows,
        cols,
        selection_size: rows,
        row_positions: (0..rows as u32).map(|r| [r, r]).collect(),
        values,
        filled,
        run_counts: vec![1; cols],
    }
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);

    let values: Vec<f64> = (0..1_000_000).map(|_| rng.random_range(0.0..10.0)).collect();
    let mut horizon_err = 0.0f64;
    for bw in [0.07, 0.5, 1.0, 3.3] {
        let h = horizon_bands(&values, bw).map_err(|e| e.to_string())?;
        for (b, &v) in h.bands.iter().zip(&values) {
            horizon_err = horizon_err.max((b.reconstruct(bw) - v).abs());
        }
    }
    if horizon_err > 1e-9 {
        return Err(format!("horizon reconstruction error {horizon_err:e}"));
    }

    for _ in 0..200 {
        let (rows, cols) = (rng.random_range(1..12), rng.random_range(1..12));
        let mut cells = vec![(rng.random_range(0..rows), rng.random_range(0..cols), 0.5)];
        for i in 0..rows * cols {
            if rng.random_bool(0.3) {
                cells.push((i / cols, i % cols, rng.random()));
            }
        }
        let once = nn_fill(&grid(rows, cols, &cells)).unwrap();
        let twice = nn_fill(&once).unwrap();
        if once.values.iter().zip(&twice.values).any(|(a, b)| a.to_bits() != b.to_bits()) || !once.filled.iter().all(|&f| f) {
            return Err("nn_fill is not idempotent".into());
        }
    }
    // equidistant candidates: the smaller row wins, then the smaller column
    let ties = [
        (grid(3, 3, &[(2, 1, 2.0), (0, 1, 1.0)]), 1.0),
        (grid(3, 3, &[(1, 2, 2.0), (1, 0, 1.0)]), 1.0),
        (grid(3, 3, &[(1, 0, 2.0), (0, 1, 1.0)]), 1.0),
        (grid(3, 3, &[(2, 2, 3.0), (2, 0, 2.0), (0, 2, 1.0)]), 1.0),
    ];
    for (g, expect) in &ties {
        let got = nn_fill(g).unwrap().values[4];
        if got != *expect {
            return Err(format!("tie rule: centre filled with {got}, expected {expect}"));
        }
    }

    let dims = GridDims::cube(16).unwrap();
    let v = dims.voxel_count();
    let names = vec!["P1".into(), "P2".into(), "P3".into()];
    let fields: Vec<Vec<f64>> = (0..3).map(|_| (0..v).map(|_| rng.random()).collect()).collect();
    let set = SensitivityFieldSet::new(Measure::Delta, dims, names, fields, vec![0; v]).unwrap();
    let curve = data_driven_curve(&set, &SfcConfig::default()).unwrap();
    for _ in 0..300 {
        let brushes: Vec<Brush> = (0..rng.random_range(0..4))
            .map(|_| {
                let (a, b): (f64, f64) = (rng.random(), rng.random());
                Brush { field: rng.random_range(0..3), lo: a.min(b), hi: a.max(b) }
            })
            .collect();
        let intervals: Vec<CurveInterval> = (0..rng.random_range(0..4))
            .map(|_| {
                let start = rng.random_range(0..v as u32);
                CurveInterval { start, end: start + rng.random_range(0..800) }
            })
            .collect();
        let got: BTreeSet<u32> = resolve_selection(&brushes, &intervals, &set, Some(&curve)).unwrap().voxels.into_iter().collect();
        let mut expect: BTreeSet<u32> = (0..v as u32).collect();
        for b in &brushes {
            let hit: BTreeSet<u32> =
                (0..v as u32).filter(|&x| (b.lo..=b.hi).contains(&set.fields[b.field][x as usize])).collect();
            expect = expect.intersection(&hit).copied().collect();
        }
        if !intervals.is_empty() {
            let mut on_curve = BTreeSet::new();
            for iv in &intervals {
                for p in iv.start..=iv.end.min(v as u32 - 1) {
                    on_curve.insert(curve.order()[p as usize]);
                }
            }
            expect = expect.intersection(&on_curve).copied().collect();
        }
        if got != expect {
            return Err(format!("selection mismatch for {brushes:?} {intervals:?}: {} vs {}", got.len(), expect.len()));
        }
    }

    let ens = synthetic(dims, 4096, 0.0, 0);
    let voxel = dims.index(7, 7, 7) as u32;
    let hm = heatmap_aggregate(&ens, &scanline_curve(dims).unwrap(), &[voxel], 0, 150, 500).unwrap();
    let cols: Vec<f64> = (0..hm.cols).filter(|&c| hm.filled[c]).map(|c| hm.get(0, c)).collect();
    let monotone = cols.windows(2).all(|w| w[0] <= w[1]);
    check(
        monotone && cols.len() > 100,
        format!(
            "horizon max error {horizon_err:.1e}; nn_fill idempotent with tie rule; 300 selections match brute force; (7,7,7) heatmap monotone over {} filled columns: {monotone}",
            cols.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    use common::{try_ok, Server};
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    try_ok(d, &["generate-synthetic", "--dims", "16", "--runs", "410", "--seed", "2"])?;
    try_ok(d, &["sensitivity", "--measure", "delta"])?;
    try_ok(d, &["sfc", "--distance", "l1"])?;
    try_ok(d, &["evaluate"])?;

    let data = DatasetDir::new(d);
    let ens = io::load_ensemble(&data.manifest()).map_err(|e| e.to_string())?;
    let fields = io::read_fields(&data.sensitivity_dir(Measure::Delta)).map_err(|e| e.to_string())?;
    let curve = io::read_curve(&data.curve()).map_err(|e| e.to_string())?;
    let Report::Coherency(study) = io::read_report(&data.evaluation_dir().join("report.json")).map_err(|e| e.to_string())? else {
        return Err("evaluation report has the wrong kind".into());
    };
    let acf: Vec<AcfRow> = read_csv(&data.evaluation_dir().join("coherency.csv")).map_err(|e| e.to_string())?;
    let artifacts = ens.run_count() == 410
        && fields.voxel_count() == 4096
        && curve.kind() == CurveKind::DataDriven
        && curve.config().distance == DistanceKind::L1
        && study.curves.len() == 3
        && !acf.is_empty();
    if !artifacts {
        return Err("artifacts do not read back as written".into());
    }

    let server = Server::start(d);
    let mut answered = Vec::new();
    let mut expect = |what: &str, status: u16, body: &Value| -> Result<(), String> {
        if status != 200 || body["schema_version"] != 1 {
            return Err(format!("{what}: status {status}, body {body}"));
        }
        answered.push(what.to_string());
        Ok(())
    };
    let (s, meta) = server.json("GET", "/api/meta", "");
    expect("meta", s, &meta)?;
    let (s, pcp) = server.json("GET", "/api/pcp?count=500&seed=1", "");
    expect("pcp", s, &pcp)?;
    let (s, view) = server.json("GET", "/api/sensitivity-view?m=2&count=500", "");
    expect("sensitivity-view", s, &view)?;
    let (s, sel) = server.json("POST", "/api/selection", r#"{"pcpBrushes":[{"axis":"P1","lo":0.5,"hi":1.0}]}"#);
    expect("selection", s, &sel)?;
    let id = sel["id"].as_u64().ok_or("selection without id")?;
    let (s, info) = server.json("GET", &format!("/api/selection/{id}"), "");
    expect("selection/{id}", s, &info)?;
    let (s, heat) = server.json("GET", &format!("/api/heatmap?param=P1&selection={id}&fill=1"), "");
    expect("heatmap", s, &heat)?;
    let (s, mesh) = server.json("GET", &format!("/api/mesh?selection={id}"), "");
    expect("mesh", s, &mesh)?;
    let (s, order) = server.json("POST", "/api/axis-order", r#"{"order":["P2"]}"#);
    expect("axis-order", s, &order)?;
    let (s, head, bin) = server.request("GET", &format!("/api/mesh?selection={id}"), "", "application/octet-stream");
    let decoded = decode_binary(&bin).map_err(|e| e.to_string())?;

    let consistent = info["count"] == sel["count"]
        && sel["count"].as_u64().unwrap_or(0) > 0
        && heat["filled"].as_array().is_some_and(|f| f.iter().all(|x| x == true))
        && s == 200
        && head.to_ascii_lowercase().contains("x-schema-version: 1")
        && Some(decoded.triangle_count() as u64) == mesh["triangle_count"].as_u64()
        && order["names"][0] == "P2"
        && view["horizons"].as_array().map(Vec::len) == Some(2);
    check(
        consistent,
        format!("artifacts read back; {} endpoints answered: {}; no UI build involved", answered.len(), answered.join(", ")),
    )
}

fn main() {
    let names = [
        "irrelevant parameter",
        "localized sensitivity",
        "Sobol oracle",
        "convergence shape",
        "curve validity",
        "coherency ordering",
        "DGSA internals",
        "view-data properties",
        "end-to-end CLI",
    ];
    let mut fields: Option<Fields> = None;
    let mut failed = 0;
    for (i, name) in names.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| {
            if matches!(n, 1 | 2 | 6) && fields.is_none() {
                fields = Some(fields_32());
            }
            let big = || fields.as_ref().unwrap();
            match n {
                1 => criterion_1(big()),
                2 => criterion_2(big()),
                3 => criterion_3(),
                4 => criterion_4(),
                5 => criterion_5(),
                6 => criterion_6(big()),
                7 => criterion_7(),
                8 => criterion_8(),
                _ => criterion_9(),
            }
        }))
        .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n} ({name}): PASS [{secs:.1} s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [{secs:.1} s] {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", names.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
