use proptest::prelude::*;

use sensvol::io::manifest::{read_manifest, Sampling};
use sensvol::io::report::{read_csv, write_convergence_csv, ConvergenceStudy, StepRow};
use sensvol::io::{self, Report};
use sensvol::timing::time_measures;
use sensvol_core::evaluation::ConvergenceStep;
use sensvol_core::sampling::saltelli_sample;
use sensvol_core::sensitivity::MeasureConfig;
use sensvol_core::synthetic::{generate_synthetic, synthetic_params, SyntheticConfig};
use sensvol_core::{AuxField, Ensemble, GridDims, Measure, ParameterSpace, ParameterSpec, SampleLayout};

fn arb_ensemble() -> impl Strategy<Value = Ensemble> {
    (1usize..4, 1usize..4, 1usize..3, 1usize..4, 1usize..5, any::<bool>()).prop_flat_map(|(nx, ny, nz, n, runs, with_aux)| {
        let v = nx * ny * nz;
        let rows = prop::collection::vec(prop::collection::vec(-1.0e3f64..1.0e3, n), runs);
        let vols = prop::collection::vec(prop::collection::vec(any::<f32>(), v), runs);
        let aux = prop::collection::vec(any::<f32>(), v);
        (rows, vols, aux).prop_map(move |(rows, vols, aux)| {
            let params = (0..n).map(|i| ParameterSpec::new(format!("q{i}"), -1.0e3, 1.0e3)).collect();
            let ps = ParameterSpace::from_rows(params, &rows, SampleLayout::Unstructured).unwrap();
            let aux = if with_aux { vec![AuxField { name: "tissue".into(), values: aux }] } else { vec![] };
            Ensemble::new("arb", GridDims::new(nx, ny, nz).unwrap(), ps, vols, aux).unwrap()
        })
    })
}

fn bits(e: &Ensemble) -> (Vec<u64>, Vec<Vec<u32>>, Vec<Vec<u32>>) {
    (
        e.pspace().samples().iter().map(|v| v.to_bits()).collect(),
        e.volumes().iter().map(|v| v.iter().map(|x| x.to_bits()).collect()).collect(),
        e.aux().iter().map(|a| a.values.iter().map(|x| x.to_bits()).collect()).collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn write_then_load_is_bit_identical(e in arb_ensemble()) {
        let dir = tempfile::tempdir().unwrap();
        let path = io::write_ensemble(&e, dir.path()).unwrap();
        let back = io::load_ensemble(&path).unwrap();
        prop_assert_eq!(bits(&back), bits(&e));
        prop_assert_eq!(back.dims(), e.dims());
        prop_assert_eq!(back.pspace().params(), e.pspace().params());
        prop_assert_eq!(back.name(), e.name());
    }
}

#[test]
fn saltelli_layout_survives_the_manifest() {
    let ps = saltelli_sample(&synthetic_params(), 4, 3).unwrap();
    let cfg = SyntheticConfig { dims: GridDims::cube(4).unwrap(), run_count: ps.run_count(), noise_max: 0.01, seed: 3 };
    let e = generate_synthetic(&cfg, &ps).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = io::write_ensemble(&e, dir.path()).unwrap();
    assert_eq!(read_manifest(&path).unwrap().sampling, Some(Sampling::Saltelli { base_n: 4 }));
    assert_eq!(io::load_ensemble(&path).unwrap(), e);

    // without the declaration the layout is recognized from the rows
    let mut m: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    m.as_object_mut().unwrap().remove("sampling");
    std::fs::write(&path, serde_json::to_vec(&m).unwrap()).unwrap();
    assert_eq!(io::load_ensemble(&path).unwrap().pspace().layout(), SampleLayout::Saltelli { base_n: 4 });

    // a declared layout the rows do not follow is rejected
    m["sampling"] = serde_json::json!({"scheme": "saltelli", "base_n": 4});
    m["runs"][12]["params"][0] = serde_json::json!(0.123);
    std::fs::write(&path, serde_json::to_vec(&m).unwrap()).unwrap();
    assert!(matches!(io::load_ensemble(&path), Err(sensvol::Error::MalformedManifest { .. })));
}

#[test]
fn convergence_report_and_csv_parse_back() {
    let step = ConvergenceStep { runs: 40, previous_runs: 20, mean_abs_diff: 0.1, min_abs_diff: 0.0, max_abs_diff: 0.7 };
    let study = ConvergenceStudy {
        measure: Measure::Sobol,
        dims: [4, 4, 4],
        seed: 1,
        noise_max: 0.01,
        run_counts: vec![20, 40],
        seconds: vec![0.5, 1.25],
        steps: vec![step],
    };
    let dir = tempfile::tempdir().unwrap();
    let report = Report::Convergence(study.clone());
    io::write_report(&report, dir.path()).unwrap();
    assert_eq!(io::read_report(&dir.path().join("report.json")).unwrap(), report);
    let csv = dir.path().join("c.csv");
    write_convergence_csv(&study, &csv).unwrap();
    let rows: Vec<StepRow> = read_csv(&csv).unwrap();
    assert_eq!(rows, vec![StepRow { runs: 40, previous_runs: 20, mean_abs_diff: 0.1, min_abs_diff: 0.0, max_abs_diff: 0.7 }]);
}

#[test]
fn timing_table_shape() {
    let ps = saltelli_sample(&synthetic_params(), 4, 0).unwrap();
    let dims = GridDims::cube(4).unwrap();
    let mk = |seed| {
        generate_synthetic(&SyntheticConfig { dims, run_count: ps.run_count(), noise_max: 0.01, seed }, &ps).unwrap()
    };
    let (a, b) = (mk(1), mk(2));
    let cfg = MeasureConfig::default();
    assert!(time_measures(&[&a, &b], &[], &cfg).unwrap().rows.is_empty());
    let t = time_measures(&[&a, &b], &[Measure::Sobol, Measure::Delta], &cfg).unwrap();
    assert_eq!(t.rows.len(), 4);
    assert!(t.rows.iter().all(|r| r.seconds > 0.0 && r.runs == 20 && r.voxels == 64));
    assert_eq!(t.rows.iter().map(|r| r.measure).collect::<Vec<_>>(), [Measure::Sobol, Measure::Delta, Measure::Sobol, Measure::Delta]);
    let dir = tempfile::tempdir().unwrap();
    io::write_report(&Report::Timing(t.clone()), dir.path()).unwrap();
    assert_eq!(io::read_report(&dir.path().join("report.json")).unwrap(), Report::Timing(t));
}
