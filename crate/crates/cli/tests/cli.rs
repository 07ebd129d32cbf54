use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dispersive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dispersive"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect()
}

fn column(path: &Path, name: &str) -> Vec<String> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap();
    let idx = rdr.headers().unwrap().iter().position(|h| h == name).expect(name);
    rdr.records().map(|r| r.unwrap()[idx].to_string()).collect()
}

const TWO_MODE: &str = "[qubit]\nomega0 = 1.0\n\n[[modes]]\nomega = 0.8\ng = 0.01\n\n[[modes]]\nomega = 0.7\ng = 0.02\n\n[environment]\ntemperature = 1.0\n";

#[test]
fn coherence_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let o = dispersive(&[
        "coherence", "--preset", "2c", "--t-end", "100", "--samples", "11", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# generated_unix=")));
    assert!(text.contains("# case[T1].environment.temperature=1\n"));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 12);
    assert!(rows[0].starts_with("t,re_r_general_T0.5,im_r_general_T0.5,abs_r_general_T0.5,re_r_pair_T0.5"));
    assert_eq!(column(&out, "t").last().unwrap(), "100");
}

#[test]
fn byte_identical_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = dispersive(&["coherence", "--preset", "2a", "--no-timestamp", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn preset_round_trips_through_its_echo() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, id) in [("coherence", "2d"), ("sweep", "3a"), ("fit", "4c"), ("coherence", "4a")] {
        let first = dir.path().join(format!("{id}-1.csv"));
        let second = dir.path().join(format!("{id}-2.csv"));
        let o = dispersive(&[cmd, "--preset", id, "--no-timestamp", "--out", first.to_str().unwrap()]);
        assert!(o.status.success(), "{id}: {}", stderr(&o));
        let o = dispersive(&[
            cmd, "--config", first.to_str().unwrap(), "--no-timestamp", "--out", second.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{id}: {}", stderr(&o));
        assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap(), "{id}");
    }
}

#[test]
fn toml_config_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("m.toml");
    fs::write(&cfg, TWO_MODE).unwrap();
    let out = dir.path().join("c.csv");
    let o = dispersive(&[
        "coherence", "--config", cfg.to_str().unwrap(), "--method", "general,pair", "--samples", "50",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let a = column(&out, "abs_r_general");
    let b = column(&out, "abs_r_pair");
    for (x, y) in a.iter().zip(&b) {
        let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = dispersive(&["coherence", "--preset", "2c", "--method", "degenerate", "--t-end", "100", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[method-mismatch]"));

    let o = dispersive(&["coherence", "--preset", "9z"]);
    assert_eq!(o.status.code(), Some(2));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, TWO_MODE.replace("omega0", "omega_zero")).unwrap();
    let o = dispersive(&["coherence", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    let strong = dir.path().join("strong.toml");
    fs::write(&strong, TWO_MODE.replace("g = 0.02", "g = 0.2")).unwrap();
    let o = dispersive(&["coherence", "--config", strong.to_str().unwrap(), "--t-end", "100", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("error[regime-violated]"));

    let o = dispersive(&["fit", "--preset", "2c", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));

    let o = dispersive(&["coherence", "--config", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let o = dispersive(&[
        "coherence", "--preset", "2c", "--t-end", "100", "--samples", "5", "--out",
        dir.path().join("no/such/dir/x.csv").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn dispersive_ratio_warning_goes_to_stderr() {
    let o = dispersive(&["coherence", "--preset", "2e", "--t-end", "100", "--samples", "5"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning[dispersive-ratio]"));
    let o = dispersive(&["coherence", "--preset", "2c", "--t-end", "100", "--samples", "5"]);
    assert!(!stderr(&o).contains("warning"));
}

#[test]
fn oracle_preset_overlays_two_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a3g.csv");
    let o = dispersive(&["coherence", "--preset", "A3g", "--t-end", "500", "--samples", "101", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let header = &data_rows(&out)[0];
    assert_eq!(
        header,
        "t,re_r_general,im_r_general,abs_r_general,sz_general,re_r_exact-oracle,im_r_exact-oracle,abs_r_exact-oracle,sz_exact-oracle"
    );
}

#[test]
fn compare_at_zero_temperature_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cold.toml");
    fs::write(&cfg, TWO_MODE.replace("temperature = 1.0", "temperature = 0.0")).unwrap();
    let out = dir.path().join("cmp.csv");
    let o = dispersive(&[
        "compare", "--config", cfg.to_str().unwrap(), "--method", "general,pair", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(column(&out, "dev_abs_pair").iter().all(|d| d.parse::<f64>().unwrap() <= 1e-10));
    assert!(fs::read_to_string(&out).unwrap().contains("# summary.max_dev[pair]="));
}

#[test]
fn compare_oracle_panel_b() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cmp.csv");
    let o = dispersive(&["compare", "--preset", "A3b", "--t-end", "3000", "--samples", "3001", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let max = column(&out, "dev_abs_exact-oracle")
        .iter()
        .map(|d| d.parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(max <= 0.02, "{max}");
}

#[test]
fn sweep_preset_and_holes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("3b.csv");
    let o = dispersive(&["sweep", "--preset", "3b", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let values = column(&out, "value");
    assert_eq!(values.len(), 61);
    assert_eq!((values[0].as_str(), values[60].as_str()), ("0.65", "0.95"));

    let out = dir.path().join("holes.csv");
    let o = dispersive(&[
        "sweep", "--preset", "3a", "--param", "modes[1].omega", "--values", "0.75,1.0", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = column(&out, "t_max");
    assert!(!t[0].is_empty());
    assert!(t[1].is_empty());
    assert!(stderr(&o).contains("warning[sweep-hole]"));
}

#[test]
fn fit_preset_4f() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("4f.csv");
    let o = dispersive(&["fit", "--preset", "4f", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let gamma: f64 = column(&out, "gamma")[0].parse().unwrap();
    assert!((gamma / 1.4e-3 - 1.0).abs() <= 0.2, "{gamma}");
    let o = dispersive(&["fit", "--preset", "4f", "--fit-window", "0.5", "--fit-objective", "log-linear", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(column(&out, "objective")[0], "log-linear");
}

#[test]
fn presets_are_listed() {
    let o = dispersive(&["presets"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 22);
}
