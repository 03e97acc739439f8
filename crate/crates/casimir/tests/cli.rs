use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn casimir(args: &[&str], config: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .arg("--config")
        .arg(config)
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows as maps from column name to field.
fn csv_rows(text: &str) -> Vec<Vec<(String, String)>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| {
            header
                .iter()
                .cloned()
                .zip(rec.unwrap().iter().map(String::from))
                .collect()
        })
        .collect()
}

fn get(row: &[(String, String)], key: &str) -> String {
    row.iter().find(|(k, _)| k == key).unwrap().1.clone()
}

fn num(row: &[(String, String)], key: &str) -> f64 {
    get(row, key).parse().unwrap()
}

const MIRRORS: &str = r#"{"stack": {"layers": [
    {"material": "perfect_mirror"},
    {"material": "vacuum", "thickness": 1e-6},
    {"material": "perfect_mirror"}]}}"#;

const VACUUM: &str = r#"{"stack": {"layers": [
    {"material": "vacuum"},
    {"material": "vacuum", "thickness": 1e-6},
    {"material": "vacuum", "thickness": "semi_infinite"}]}}"#;

fn thick_si_slabs(extra: &str) -> String {
    format!(
        r#"{{"stack": {{"gap_index": 2, "layers": [
            {{"material": "vacuum"}},
            {{"material": "si_like", "thickness": 2.5e-6}},
            {{"material": "vacuum", "thickness": 1e-6}},
            {{"material": "si_like", "thickness": 2.5e-6}},
            {{"material": "vacuum"}}]}}{extra}}}"#
    )
}

#[test]
fn perfect_mirrors_give_the_ideal_pressure() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "pm.json", MIRRORS);
    let o = casimir(&["force"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let p = num(&rows[0], "pressure_N_per_m2");
    assert!((p / 1.3001e-3 - 1.0).abs() < 1e-4, "{p}");
    assert!((num(&rows[0], "f_over_f0") - 1.0).abs() < 1e-6);
    assert_eq!(get(&rows[0], "status"), "ok");
}

#[test]
fn vacuum_walls_give_zero() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "vac.json", VACUUM);
    let o = casimir(&["force"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(num(&rows[0], "pressure_N_per_m2"), 0.0);
    assert_eq!(num(&rows[0], "f_over_f0"), 0.0);
}

#[test]
fn si_slabs_are_weaker_than_ideal() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "slab.json", &thick_si_slabs(""));
    let o = casimir(&["force", "--distance", "1e-6"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = num(&csv_rows(&stdout(&o))[0], "f_over_f0");
    assert!(r > 0.0 && r < 1.0, "{r}");
}

#[test]
fn negative_thickness_is_a_config_error_naming_the_layer() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "neg.json",
        r#"{"stack": {"gap_index": 2, "layers": [
            {"material": "vacuum"},
            {"material": "si_like", "thickness": -1e-7},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "si_like"}]}}"#,
    );
    let o = casimir(&["force"], &cfg);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("stack.layers[1].thickness"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn every_violation_is_listed() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "bad.json",
        r#"{"stack": {"gap_index": 1, "layers": [
            {"material": "si_like", "thickness": 1e-6},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "si_like", "thickness": -3},
            {"material": "nowhere"}]},
          "mode": {"finite_t": -1},
          "sweep": {"axes": [{"parameter": "gap", "scale": "log", "min": 0, "max": 1, "count": 4}]}}"#,
    );
    let o = casimir(&["validate"], &cfg);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for needle in [
        "stack.layers[0].thickness",
        "stack.layers[2].thickness",
        "stack.layers[3].material",
        "mode.finite_t",
        "sweep.axes[0]",
    ] {
        assert!(err.contains(needle), "missing {needle} in {err}");
    }
    assert!(err.contains("(5 problems)"), "{err}");
}

#[test]
fn non_vacuum_gap_is_coerced_with_a_warning() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "gap.json",
        r#"{"stack": {"layers": [
            {"material": "perfect_mirror"},
            {"material": {"kind": "drude_lorentz", "omega0": 1e15, "omega_p": 1e16, "gamma0": 1e13}, "thickness": 1e-6},
            {"material": "perfect_mirror"}]}}"#,
    );
    let o = casimir(&["force"], &cfg);
    assert!(o.status.success());
    assert!(
        stderr(&o).contains("gap permittivity set equal to unity"),
        "{}",
        stderr(&o)
    );
    assert!((num(&csv_rows(&stdout(&o))[0], "f_over_f0") - 1.0).abs() < 1e-6);
}

#[test]
fn missing_config_flag_exits_with_config_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .arg("validate")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn one_point_sweep_matches_force() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "one.json",
        &thick_si_slabs(
            r#", "sweep": {"axes": [{"parameter": "gap", "scale": "log", "min": 1e-6, "max": 1e-6, "count": 1}]}"#,
        ),
    );
    let a = casimir(&["force"], &cfg);
    let b = casimir(&["sweep"], &cfg);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn mirror_distance_sweep_stays_ideal() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "pm_sweep.json",
        r#"{"stack": {"layers": [
            {"material": "perfect_mirror"},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "perfect_mirror"}]},
          "sweep": {"axes": [{"parameter": "gap", "scale": "log", "min": 1e-8, "max": 1e-4, "count": 50}]}}"#,
    );
    let o = casimir(&["sweep"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 50);
    assert!((num(&rows[0], "axis1") - 1e-8).abs() < 1e-22);
    assert!((num(&rows[49], "axis1") - 1e-4).abs() < 1e-18);
    for r in &rows {
        assert!((num(r, "f_over_f0") - 1.0).abs() < 1e-6);
    }
}

#[test]
fn rows_satisfy_the_ratio_invariant_and_grids_are_row_major() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "grid.json",
        &thick_si_slabs(
            r#", "sweep": {"axes": [
                {"parameter": ["layers[1].thickness", "layers[3].thickness"], "scale": "log", "min": 1e-7, "max": 1e-5, "count": 3},
                {"parameter": "gap", "scale": "linear", "min": 1e-7, "max": 2e-6, "count": 4}]}"#,
        ),
    );
    let o = casimir(&["sweep"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 12);
    for (i, r) in rows.iter().enumerate() {
        let expect_axis2 = [
            1e-7,
            (2.0 * 1e-7 + 2e-6) / 3.0,
            (1e-7 + 2.0 * 2e-6) / 3.0,
            2e-6,
        ][i % 4];
        assert!((num(r, "axis2") / expect_axis2 - 1.0).abs() < 1e-15);
        let (p, f0, ratio) = (
            num(r, "pressure_N_per_m2"),
            num(r, "f0_N_per_m2"),
            num(r, "f_over_f0"),
        );
        assert!(((p / f0) - ratio).abs() <= 1e-15 * ratio.abs(), "row {i}");
    }
    assert_eq!(get(&rows[0], "axis1"), get(&rows[3], "axis1"));
    assert_ne!(get(&rows[3], "axis1"), get(&rows[4], "axis1"));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "det.json",
        &thick_si_slabs(
            r#", "sweep": {"axes": [
                {"parameter": "materials.si.gamma0", "scale": "log", "min": 1e10, "max": 1e15, "count": 5},
                {"parameter": "gap", "scale": "log", "min": 1e-7, "max": 1e-5, "count": 5}]},
              "materials": {"si": {"kind": "drude_lorentz", "preset": "si_like"}}"#,
        )
        .replace("\"si_like\"", "\"si\"")
        .replace("\"preset\": \"si\"", "\"preset\": \"si_like\""),
    );
    let mut outputs = Vec::new();
    for threads in ["1", "3", "0"] {
        for format in ["csv", "json"] {
            let out = dir.path().join(format!("out_{threads}.{format}"));
            let o = casimir(
                &[
                    "sweep",
                    "--threads",
                    threads,
                    "--format",
                    format,
                    "--out",
                    out.to_str().unwrap(),
                ],
                &cfg,
            );
            assert!(o.status.success(), "{}", stderr(&o));
            outputs.push((format, std::fs::read(&out).unwrap()));
        }
    }
    for (format, bytes) in &outputs[2..] {
        let reference = if *format == "csv" {
            &outputs[0].1
        } else {
            &outputs[1].1
        };
        assert_eq!(bytes, reference);
    }
    let csv_text = String::from_utf8(outputs[0].1.clone()).unwrap();
    let rows = csv_rows(&csv_text);
    assert_eq!(rows.len(), 25);
    // the material sweep reaches both slabs: damping lowers the pressure
    assert!(num(&rows[0], "pressure_N_per_m2") > num(&rows[20], "pressure_N_per_m2"));
}

#[test]
fn failed_points_are_reported_per_row() {
    let dir = TempDir::new().unwrap();
    // the negative gap width fails on its own row only
    let cfg = write(
        &dir,
        "partial.json",
        r#"{"stack": {"layers": [
            {"material": "perfect_mirror"},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "perfect_mirror"}]},
          "sweep": {"axes": [{"parameter": "gap", "scale": "linear", "min": -1e-6, "max": 1e-6, "count": 3}]}}"#,
    );
    let o = casimir(&["sweep"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert!(get(&rows[0], "status").starts_with("error"));
    assert!(get(&rows[0], "pressure_N_per_m2").is_empty());
    assert_eq!(get(&rows[2], "status"), "ok");
}

#[test]
fn all_points_failing_exits_with_numeric_code() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "allfail.json",
        r#"{"stack": {"layers": [
            {"material": "perfect_mirror"},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "perfect_mirror"}]},
          "sweep": {"axes": [{"parameter": "gap", "scale": "linear", "min": -2e-6, "max": -1e-6, "count": 3}]}}"#,
    );
    assert_eq!(casimir(&["sweep"], &cfg).status.code(), Some(3));
}

#[test]
fn asymptote_reports_the_standard_law() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "asym.json",
        r#"{"stack": {"layers": [
            {"material": "si_like"},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "si_like"}]}}"#,
    );
    let o = casimir(&["asymptote"], &cfg);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let value = |k: &str| rows.iter().find(|r| r[0].1 == k).unwrap()[1].1.clone();
    assert_eq!(value("distance_law_exponent"), "-4");
    let measured: f64 = value("measured_exponent").parse().unwrap();
    assert!((measured - 4.0).abs() < 0.1);
    let diff: f64 = value("relative_difference").parse().unwrap();
    assert!(diff.abs() < 0.05);
}

#[test]
fn oned_mirrors_and_vacuum() {
    let dir = TempDir::new().unwrap();
    let pm = write(&dir, "pm.json", MIRRORS);
    let o = casimir(&["oned", "--distance", "1e-6"], &pm);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let f = num(&rows[0], "force_N_per_unit_area");
    assert!((f / 8.277e-15 - 1.0).abs() < 1e-3, "{f}");
    assert!((num(&rows[0], "f_over_f0") - 1.0).abs() < 1e-6);

    let vac = write(&dir, "vac.json", VACUUM);
    let o = casimir(&["oned"], &vac);
    assert_eq!(num(&csv_rows(&stdout(&o))[0], "force_N_per_unit_area"), 0.0);
}

#[test]
fn oned_rejects_finite_temperature() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "warm.json",
        r#"{"stack": {"layers": [
            {"material": "si_like"},
            {"material": "vacuum", "thickness": 1e-6},
            {"material": "si_like"}]},
          "mode": {"finite_t": 300}}"#,
    );
    assert_eq!(casimir(&["oned"], &cfg).status.code(), Some(2));
    assert!(casimir(&["force"], &cfg).status.success());
}
