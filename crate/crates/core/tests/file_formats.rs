use steering_core::golden;
use steering_core::io::{
    convergence_csv_file, read_config, read_set, read_state, sweep_csv_file, write_json, write_set, write_state,
    OptimizationReport,
};
use steering_core::optimizer::{anneal, AnnealingConfig};
use steering_core::qstate::make_avn;
use steering_core::violation::{sweep, Axis, Family, SweepGrid};

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let set = golden::optimal(6).unwrap().measurement_set().unwrap().0;
    let p = dir.path().join("set.json");
    write_set(&p, &set).unwrap();
    let first = std::fs::read(&p).unwrap();
    let (back, delta) = read_set(&p).unwrap();
    assert_eq!(delta, 0.0);
    assert_eq!(back, set);
    write_set(&p, &back).unwrap();
    assert_eq!(std::fs::read(&p).unwrap(), first);

    let rho = make_avn(0.7, 0.4).unwrap();
    let q = dir.path().join("state.json");
    write_state(&q, &rho).unwrap();
    assert_eq!(read_state(&q).unwrap(), rho);
}

#[test]
fn optimizer_report_echoes_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = AnnealingConfig {
        restarts: 2,
        cooling: 0.7,
        ..AnnealingConfig::new(3, 4)
    };
    let r = anneal(&config).unwrap();
    let p = dir.path().join("opt.json");
    write_json(&p, &OptimizationReport::new(&config, &r)).unwrap();
    let report: OptimizationReport = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(report.config, config);
    assert_eq!(report.best_bound, r.best_bound);
    assert_eq!(report.best_set.into_set().unwrap().0, r.best_set);

    let c = dir.path().join("config.json");
    write_json(&c, &config).unwrap();
    assert_eq!(read_config(&c).unwrap(), config);
}

#[test]
fn sweep_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let bob = golden::optimal(4).unwrap().measurement_set().unwrap().0;
    let grid = SweepGrid {
        family: Family::Werner,
        axis1: Axis::linspace("V", 0.0, 1.0, 5),
        axis2: None,
        set_label: "t".into(),
    };
    let rows = sweep(&grid, &bob).unwrap();
    let p = dir.path().join("sweep.csv");
    sweep_csv_file(&p, &rows).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param1,param2,quantum_value,lhs_bound,margin,detected");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,,0,"));
    assert!(lines[1].ends_with(",0"));
    assert!(lines[5].ends_with(",1"));

    let conv = steering_core::hemisphere::convergence_table([2, 3], |_| 4.0).unwrap();
    let c = dir.path().join("conv.csv");
    convergence_csv_file(&c, &conv).unwrap();
    assert!(std::fs::read_to_string(&c).unwrap().starts_with("n,N,all_ones,analytic\n2,"));
}
