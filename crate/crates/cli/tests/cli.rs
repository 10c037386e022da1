use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K33: &str = "# K3,3\n6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";

/// Same keys everywhere; numbers within `tol`, except deviations, which only
/// need to stay below `tol`.
fn assert_matches_golden(got: &Value, want: &Value, tol: f64, path: &str) {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            let gk: Vec<_> = g.keys().collect();
            let wk: Vec<_> = w.keys().collect();
            assert_eq!(gk, wk, "keys at {path}");
            for (k, wv) in w {
                let sub = format!("{path}.{k}");
                if k == "deviations" {
                    for (name, dev) in g[k].as_object().unwrap() {
                        assert!(wv.get(name).is_some(), "unexpected deviation {name}");
                        assert!(dev.as_f64().unwrap() <= tol, "{name} = {dev}");
                    }
                } else {
                    assert_matches_golden(&g[k], wv, tol, &sub);
                }
            }
        }
        (Value::Array(g), Value::Array(w)) => {
            assert_eq!(g.len(), w.len(), "length at {path}");
            for (i, (a, b)) in g.iter().zip(w).enumerate() {
                assert_matches_golden(a, b, tol, &format!("{path}[{i}]"));
            }
        }
        (Value::Number(g), Value::Number(w)) if w.is_f64() || g.is_f64() => {
            let (a, b) = (g.as_f64().unwrap(), w.as_f64().unwrap());
            assert!((a - b).abs() <= tol * (1.0 + b.abs()), "{path}: {a} vs {b}");
        }
        _ => assert_eq!(got, want, "at {path}"),
    }
}

#[test]
fn spectrum_json_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k33.el", K33);
    let out = cspec(&["spectrum", "--input", &input, "--op", "central", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let got: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let golden = include_str!("golden/spectrum_central_k33.json");
    let want: Value = serde_json::from_str(golden).unwrap();
    assert_matches_golden(&got, &want, 1e-8, "$");
}

#[test]
fn spectrum_text_uses_twelve_digits() {
    let out = cspec(&[
        "spectrum",
        "--input",
        "family:complete_bipartite(3,3)",
        "--op",
        "central",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.543223563717  4"), "{text}");
    assert!(text.contains("kemeny: 16.0694444444"), "{text}");
    assert!(text.contains("degree_kirchhoff: 771.333333333"), "{text}");
}

#[test]
fn closed_method_on_path_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p3.el", "0 1\n1 2\n");
    let out = cspec(&["spectrum", "--input", &input, "--method", "closed"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NotRegular"));
}

#[test]
fn guards_name_themselves() {
    let out = cspec(&[
        "spectrum",
        "--input",
        "family:cycle(5)",
        "--op",
        "cej",
        "--g2",
        "family:complete(2)",
        "--method",
        "closed",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NegativeMultiplicity"));
    let out = cspec(&[
        "invariants",
        "--input",
        "family:path(4)",
        "--route",
        "closed",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let two_edges = write(dir.path(), "2k2.el", "0 1\n2 3\n");
    let out = cspec(&["invariants", "--input", &two_edges, "--route", "spectral"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("Disconnected"));
}

#[test]
fn io_and_parse_failures_exit_2() {
    let out = cspec(&["spectrum", "--input", "/nonexistent/graph.el"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.el", "0 1\n1 one\n");
    let out = cspec(&["spectrum", "--input", &bad, "--method", "direct"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    let looped = write(dir.path(), "loop.el", "0 0\n");
    let out = cspec(&["spectrum", "--input", &looped, "--method", "direct"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SelfLoop"));
    let big = write(dir.path(), "big.g6", "~?@?\n");
    let out = cspec(&["spectrum", "--input", &big]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("UnsupportedSize"));
}

#[test]
fn invariants_all_routes_agree() {
    let out = cspec(&[
        "invariants",
        "--input",
        "family:complete_bipartite(3,3)",
        "--op",
        "central",
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let routes = v["routes"].as_array().unwrap();
    assert_eq!(routes.len(), 3);
    for r in routes {
        assert!((r["kemeny"].as_f64().unwrap() - 1157.0 / 72.0).abs() < 1e-6);
        assert_eq!(r["edge_count_used"], 48);
    }
    for (_, dev) in v["deviations"].as_object().unwrap() {
        assert!(dev.as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn printed_transcription_is_selectable() {
    let args = [
        "invariants",
        "--input",
        "family:complete_bipartite(3,3)",
        "--op",
        "cvj",
        "--g2",
        "family:complete(2)",
        "--route",
        "closed",
        "--json",
    ];
    let kemeny = |extra: &[&str]| {
        let mut a = args.to_vec();
        a.extend_from_slice(extra);
        let out = cspec(&a);
        assert!(out.status.success());
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        v["routes"][0]["kemeny"].as_f64().unwrap()
    };
    let corrected = kemeny(&[]);
    let printed = kemeny(&["--transcription", "printed"]);
    assert!((corrected - 17.2084719334).abs() < 1e-8, "{corrected}");
    assert!((printed - corrected).abs() > 0.1);
}

#[test]
fn construct_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (format, name) in [("edgelist", "out.el"), ("graph6", "out.g6")] {
        let path = dir.path().join(name);
        let out = cspec(&[
            "construct",
            "--op",
            "cej",
            "--g1",
            "family:complete(4)",
            "--g2",
            "family:complete(3)",
            "--out",
            path.to_str().unwrap(),
            "--format",
            format,
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let spec = cspec(&[
            "spectrum",
            "--input",
            path.to_str().unwrap(),
            "--method",
            "direct",
            "--json",
        ]);
        let v: Value = serde_json::from_str(&stdout(&spec)).unwrap();
        assert_eq!(
            (v["n"].as_u64(), v["m"].as_u64()),
            (Some(13), Some(6 + 6 + 3 + 18))
        );
    }
    let out = cspec(&[
        "construct",
        "--op",
        "cvj",
        "--g1",
        "family:complete(4)",
        "--out",
        "-",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cospectral_reports() {
    let out = cspec(&[
        "cospectral",
        "--a",
        "family:complete(3)",
        "--b",
        "family:path(3)",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("not cospectral"));

    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (g, name) in [("family:shrikhande", "a.el"), ("family:rook_4x4", "b.el")] {
        let path = dir.path().join(name);
        let out = cspec(&[
            "construct",
            "--op",
            "cvj",
            "--g1",
            g,
            "--g2",
            "family:complete(2)",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        files.push(path.to_str().unwrap().to_string());
    }
    let out = cspec(&[
        "cospectral",
        "--a",
        &files[0],
        "--b",
        &files[1],
        "--tol",
        "1e-7",
        "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "cospectral");
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-7);
    assert_eq!(v["graph_a"]["n"], 66);
}

#[test]
fn verify_suite_passes() {
    let out = cspec(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 failed"));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
    let out = cspec(&["verify", "--suite", "other"]);
    assert_eq!(out.status.code(), Some(2));
}
