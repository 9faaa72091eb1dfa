use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn pst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_chain() {
    let out = pst(&["analyze", "--demo", "chain:5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["omega"], serde_json::json!([1.0, 1.5, 1.5, 1.0]));
    let t = report["pst"]["time"].as_f64().unwrap();
    assert!((t - PI).abs() < 1e-11, "{t}");
    assert_eq!(report["pst"]["achieved"], serde_json::json!(true));
    assert_eq!(report["strata_sizes"], serde_json::json!([1, 1, 1, 1, 1]));
}

#[test]
fn analyze_is_byte_for_byte_deterministic() {
    for demo in ["w-network", "tree16", "star5"] {
        let a = pst(&["analyze", "--demo", demo]);
        let b = pst(&["analyze", "--demo", demo]);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = pst(&["verify", "--demo", "tree7", "--trials", "20", "--seed", "3"]);
    let b = pst(&["verify", "--demo", "tree7", "--trials", "20", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_w_network_measure() {
    let out = pst(&["analyze", "--demo", "w-network"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["measure"]["atoms"],
        serde_json::json!([-1.73205080757, 0.0, 1.73205080757])
    );
    assert_eq!(
        report["measure"]["weights"],
        serde_json::json!([0.25, 0.5, 0.25])
    );
}

#[test]
fn leaf_reference_exits_two() {
    let out = pst(&["analyze", "--demo", "star5", "--reference", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("quotient closure violation at layer 1"),
        "{err}"
    );
}

#[test]
fn other_failures_exit_one() {
    assert_eq!(
        pst(&["analyze", "--demo", "petersen"]).status.code(),
        Some(1)
    );
    assert_eq!(pst(&["analyze"]).status.code(), Some(1));
    assert_eq!(
        pst(&["analyze", "--input", "/nonexistent/net.toml"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        pst(&["analyze", "--demo", "chain:3", "--reference", "9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(pst(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_demos() {
    let out = pst(&[
        "verify",
        "--demo",
        "circulant6",
        "--trials",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = pst(&[
        "verify", "--demo", "tree16", "--trials", "50", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["target_layer_size"], serde_json::json!(8));
    assert_eq!(report["passed"], serde_json::json!(true));

    let out = pst(&["verify", "--demo", "tree16", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trials"));
}

#[test]
fn trace_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let two_pi = format!("{}", 2.0 * PI);
    let out = pst(&[
        "trace",
        "--demo",
        "chain:2",
        "--t-end",
        &two_pi,
        "--samples",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "t,re_f,im_f,abs_f");
    assert!(csv.ends_with('\n'));
    let row: Vec<f64> = lines[2].split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[0] - PI / 2.0).abs() < 1e-11);
    assert!((row[3] - (PI / 4.0).sin()).abs() < 1e-11);

    let out = pst(&[
        "trace",
        "--demo",
        "chain:2",
        "--t-end",
        "1",
        "--samples",
        "2",
    ]);
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn trace_square_reaches_one_at_pi() {
    let pi = format!("{PI}");
    let out = pst(&[
        "trace",
        "--demo",
        "hypercube:2",
        "--t-end",
        &pi,
        "--samples",
        "3",
    ]);
    let text = stdout(&out);
    let last: Vec<f64> = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((last[3] - 1.0).abs() < 1e-9);
}

#[test]
fn trace_reports_unwritable_path() {
    let out = pst(&[
        "trace",
        "--demo",
        "chain:3",
        "--out",
        "/nonexistent/dir/t.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/t.csv"));
}

#[test]
fn input_documents_and_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.toml");
    let out = pst(&["export", "--demo", "star5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let from_file = pst(&["analyze", "--input", path.to_str().unwrap()]);
    let from_demo = pst(&["analyze", "--demo", "star5"]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["network"]["source"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&from_file), strip(&from_demo));

    let leaf = pst(&[
        "analyze",
        "--input",
        path.to_str().unwrap(),
        "--reference",
        "4",
    ]);
    assert_eq!(leaf.status.code(), Some(2));
}

#[test]
fn malformed_document_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "vertices = 3\nedges = [[1, 2, 1.0], [2, 3, -1.0]]\n").unwrap();
    let out = pst(&["analyze", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("edges[1]"), "{err}");
    assert!(Path::new(&path).exists());
}

#[test]
fn scale_flag_rescales_pst_time() {
    let out = pst(&["analyze", "--demo", "chain:3", "--scale", "2"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let t = report["pst"]["time"].as_f64().unwrap();
    assert!((t - PI / 2.0).abs() < 1e-10, "{t}");
}
