use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotanasym"))
        .args(args)
        .env_remove("COTANASYM_BERNOULLI_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn coeffs_table_starts_at_one() {
    let (header, rows) = csv_rows(&stdout(&["coeffs", "--max-l", "5", "--digits", "30"]));
    assert_eq!(header, ["l", "exact", "numeric", "sign"]);
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0][1], "1");
    assert_eq!(rows[1][1], "3/16 + 1/3*pi^2");
    assert!(rows.iter().all(|r| r[3] == "1"));
}

#[test]
fn guard_reproduces_first_table_row() {
    let (header, rows) = csv_rows(&stdout(&["guard", "--n", "51"]));
    assert_eq!(
        header[..4],
        ["n", "log10_G1", "log10_Ginf", "recommended_digits"]
    );
    let row = &rows[0];
    assert!(row[4].starts_with("4.53"), "{row:?}");
    assert_eq!(row[5], "27");
    assert!(row[6].starts_with("1.46"));
    assert_eq!(row[7], "27");
}

#[test]
fn g2_matches_closed_form() {
    let (header, rows) = csv_rows(&stdout(&["gn", "--n", "2", "--digits", "40"]));
    assert_eq!(header, ["n", "digits_used", "g_n", "g_n_minus_inv_n"]);
    assert_eq!(rows[0][1], "40");
    let want = 1.0 / 6.0 + std::f64::consts::PI.powi(2) / 18.0;
    let got: f64 = rows[0][2].parse().unwrap();
    assert!((got - want).abs() < 1e-15);
    assert!(rows[0][2].starts_with("7.1497802228274214549e-1"));
}

#[test]
fn csv_values_reparse() {
    let text = stdout(&["gn", "--n", "5", "--count", "4", "--out-digits", "17"]);
    let (_, rows) = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row[0], (5 + i).to_string());
        let g: f64 = row[2].parse().unwrap();
        let d: f64 = row[3].parse().unwrap();
        let n = (5 + i) as f64;
        assert!(((g - 1.0 / n) - d).abs() <= 1e-15 * g);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "residual",
        "--n-start",
        "60",
        "--n-end",
        "100",
        "--step",
        "20",
        "--L",
        "2",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_output() {
    let text = stdout(&["cot", "--h", "1", "--k", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let c: f64 = v[0]["c_value"].as_str().unwrap().parse().unwrap();
    let third = std::f64::consts::PI / 3.0;
    let want = -(1.0 / third.tan() + 2.0 / (2.0 * third).tan()) / 3.0;
    assert!((c - want).abs() < 1e-15);
}

#[test]
fn reciprocity_row() {
    let (header, rows) = csv_rows(&stdout(&["grecip", "--h", "5", "--k", "4"]));
    assert_eq!(header, ["x", "g_direct", "g_taylor", "abs_diff"]);
    assert_eq!(rows[0][0], "5/4");
    let diff: f64 = rows[0][3].parse().unwrap();
    assert!(diff < 1e-40);
}

#[test]
fn oracle_row() {
    let (_, rows) = csv_rows(&stdout(&["oracle", "--n", "20", "--out-digits", "15"]));
    let rel: f64 = rows[0][3].parse().unwrap();
    assert!(rel < 1e-6, "{rows:?}");
}

#[test]
fn figure_columns() {
    let (header, rows) = csv_rows(&stdout(&[
        "figure",
        "--n-start",
        "100",
        "--n-end",
        "200",
        "--step",
        "50",
    ]));
    assert_eq!(header, ["n", "figure_quantity", "predicted_l5_term"]);
    assert_eq!(
        rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(),
        ["100", "150", "200"]
    );
}

#[test]
fn low_precision_warns_then_fails_with_code_3() {
    let out = run(&["gn", "--n", "100", "--digits", "20"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("warning") && err.contains("insufficient precision"),
        "{err}"
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn low_but_sufficient_precision_only_warns() {
    let out = run(&["gn", "--n", "60", "--digits", "60"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn argument_errors_exit_2() {
    assert_eq!(run(&["gn"]).status.code(), Some(2));
    assert_eq!(run(&["cot", "--h", "1", "--k", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["grecip", "--h", "5", "--k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["residual", "--n-start", "50", "--n-end", "40", "--L", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "A42"]).status.code(), Some(2));
}

#[test]
fn verify_selected_checks() {
    let text = stdout(&["verify", "--fast", "A1", "A4"]);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("PASS A1"));
    assert!(lines[1].starts_with("PASS A4"));
}

#[test]
fn bernoulli_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bernoulli.txt");
    let p = path.to_str().unwrap();
    let first = stdout(&["--bernoulli-cache", p, "gn", "--n", "24"]);
    let cache = std::fs::read_to_string(&path).unwrap();
    assert!(cache.lines().any(|l| l == "2 1 6"));
    assert!(cache.lines().any(|l| l == "12 -691 2730"));
    assert_eq!(stdout(&["--bernoulli-cache", p, "gn", "--n", "24"]), first);

    std::fs::write(&path, "4 oops 30\n").unwrap();
    assert_eq!(
        run(&["--bernoulli-cache", p, "gn", "--n", "4"])
            .status
            .code(),
        Some(1)
    );
}
