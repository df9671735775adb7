use ped::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ped").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn estimate_writes_csv_to_stdout() {
    let (code, out, err) = call(&[
        "estimate", "--system", "shift:2", "--n", "2..=5", "--eps", "1/2",
    ]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("system_id,n,k,eps,x_id,r,r_exact,log_r,s,value")
    );
    assert!(lines.all(|l| l.starts_with("shift:2,")));
    assert!(err.contains("h/log2"));
}

#[test]
fn estimate_writes_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("golden");
    let (code, out, _) = call(&[
        "estimate",
        "--system",
        "golden-mean",
        "--n",
        "3..6",
        "--format",
        "both",
        "--out",
        stem.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("system golden-mean"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(stem.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(json["system_id"], "golden-mean");
    let csv = std::fs::read_to_string(stem.with_extension("csv")).unwrap();
    assert!(csv.lines().count() > 10);
}

#[test]
fn product_and_power_flags() {
    let (code, out, _) = call(&[
        "estimate",
        "--product",
        "shift:2,point",
        "--n",
        "2..=4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\"system_id\": \"shift:2*point\""));
    let (code, out, _) = call(&[
        "estimate",
        "--power",
        "shift:2,2",
        "--n",
        "1..=3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("shift:2^2"));
}

#[test]
fn samples_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.json");
    std::fs::write(
        &path,
        r#"[{"kind": "symbolic", "prefix": [1], "period": [0]}]"#,
    )
    .unwrap();
    let (code, out, err) = call(&[
        "estimate",
        "--system",
        "shift:2",
        "--n",
        "2..4",
        "--samples",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out
        .lines()
        .skip(1)
        .filter(|l| !l.contains(",,,"))
        .all(|l| l.split(',').nth(4) == Some("0")));
    std::fs::write(
        &path,
        r#"[{"kind": "symbolic", "prefix": [1, 1], "period": [0]}]"#,
    )
    .unwrap();
    let (code, _, err) = call(&[
        "estimate",
        "--system",
        "golden-mean",
        "--samples",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("not in the system"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(call(&["estimate", "--system", "nope"]).0, 2);
    assert_eq!(
        call(&["estimate", "--system", "shift:2", "--eps", "0.3"]).0,
        2
    );
    assert_eq!(
        call(&["estimate", "--system", "shift:2", "--n", "5..2"]).0,
        2
    );
    assert_eq!(call(&["estimate"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "{\n  \"schema\": 1,\n  \"variant\": \"shift_sft\",\n  \"transitions\": [[1, 1],\n",
    )
    .unwrap();
    let (code, _, err) = call(&["estimate", "--system", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "estimate",
        "--system",
        "golden-mean*identity8",
        "--n",
        "2..5",
        "--format",
        "json",
    ];
    let a = call(&args).1;
    let b = call(&args).1;
    assert_eq!(a, b);
}

#[test]
fn builtin_prefix_and_spec_style_range() {
    let (code, out, _) = call(&[
        "estimate",
        "--system",
        "builtin:identity8",
        "--n",
        "1..4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h_pre"], 0.0);
}

#[test]
fn verify_reports_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = call(&[
        "verify",
        "--suite",
        "conjugacy",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("conjugacy:"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["suite"], "conjugacy");
}

#[test]
fn verify_power_with_exponent_list() {
    let (code, out, err) = call(&["verify", "--suite", "power", "--m", "2"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("0 fail"));
    assert_eq!(call(&["verify", "--suite", "power", "--m", "0"]).0, 2);
}

#[test]
fn verify_rejects_corpus_with_wrong_version() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    let mut corpus = serde_json::to_value(ped::verify::Corpus::default()).unwrap();
    corpus["version"] = serde_json::json!(99);
    std::fs::write(&path, corpus.to_string()).unwrap();
    let (code, _, err) = call(&[
        "verify",
        "--suite",
        "sandwich",
        "--corpus",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn sweep_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let (code, out, _) = call(&[
        "sweep",
        "--systems",
        "identity8,shift:2",
        "--n",
        "2..6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains("h_top"));
    assert_eq!(out.lines().count(), 3);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        csv.lines().filter(|l| l.starts_with("system_id")).count(),
        1
    );
    assert!(csv.lines().any(|l| l.starts_with("identity8,")));
    assert!(csv.lines().any(|l| l.starts_with("shift:2,")));
}
