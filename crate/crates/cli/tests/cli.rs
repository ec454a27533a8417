//! Runs the `nbcolor` binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nbcolor_core::corpus;
use serde_json::Value;

fn nbcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbcolor")).args(args).output().expect("spawn nbcolor")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn graph_file(dir: &Path, name: &str) -> PathBuf {
    write(dir, &format!("{name}.txt"), &corpus::by_name(name).unwrap().to_edge_list())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pet = graph_file(dir.path(), "petersen");
    let o = nbcolor(&["analyze", s(&pet)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("girth          5"), "{text}");
    let j = json(&nbcolor(&["--format", "json", "analyze", s(&pet)]));
    assert!((j["spectral"]["rho"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((j["spectral"]["r_star"].as_f64().unwrap() + 1.0).abs() < 1e-6);

    let c6 = nbcolor(&["analyze", s(&graph_file(dir.path(), "c6"))]);
    assert_eq!(code(&c6), 2);
    assert!(stdout(&c6).contains("cycle"));
    let tree = nbcolor(&["analyze", s(&graph_file(dir.path(), "path5"))]);
    assert_eq!(code(&tree), 2);
    assert!(stdout(&tree).contains("2-core is empty"));

    let csv = stdout(&nbcolor(&["--format", "csv", "analyze", "corpus:petersen"]));
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.contains("\ngirth,5\n"), "{csv}");
}

#[test]
fn parse_errors_exit_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = nbcolor(&["analyze", s(&write(dir.path(), "bad.txt", "0 1\n1 x\n"))]);
    assert_eq!(code(&bad), 4);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    assert_eq!(code(&nbcolor(&["analyze", s(&write(dir.path(), "loop.txt", "0 1\n2 2\n"))])), 4);
    let cert = write(dir.path(), "cert.json", "{not json");
    assert_eq!(code(&nbcolor(&["verify", "corpus:petersen", s(&cert)])), 4);
}

#[test]
fn certify_verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("k4.json");
    let o = nbcolor(&["--format", "json", "certify", "corpus:k4", "--emit", s(&cert)]);
    assert_eq!(code(&o), 0);
    assert!((json(&o)["claimed_bound"].as_f64().unwrap() - 2.06066).abs() < 1e-5);
    let v = nbcolor(&["verify", "corpus:k4", s(&cert)]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("ACCEPT"));

    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    c["claimed_bound"] = Value::from(2.5);
    let tampered = write(dir.path(), "tampered.json", &c.to_string());
    let t = nbcolor(&["verify", "corpus:k4", s(&tampered)]);
    assert_eq!(code(&t), 1);
    assert!(stdout(&t).starts_with("REJECT"));
    let other = nbcolor(&["verify", "corpus:petersen", s(&cert)]);
    assert_eq!(code(&other), 1);
    assert!(String::from_utf8_lossy(&other.stderr).contains("different graph"));

    // A pendant tree is peeled; the certificate refers to the 2-core.
    let mut text = corpus::petersen().to_edge_list();
    text = text.replace("n 10\n", "n 12\n") + "0 10\n10 11\n";
    let tailed = write(dir.path(), "tailed.txt", &text);
    let cert2 = dir.path().join("tailed.json");
    let o = nbcolor(&["--format", "json", "certify", s(&tailed), "--emit", s(&cert2)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["target"]["reduced"], Value::Bool(true));
    let v = json(&nbcolor(&["--format", "json", "verify", s(&tailed), s(&cert2)]));
    assert_eq!(v["valid"], Value::Bool(true));
    assert_eq!(v["checked_against"], "2-core component");

    // An explicit r outside the PSD region is refused.
    assert_eq!(code(&nbcolor(&["certify", "corpus:k44_plus_edge", "--r", "-2.0"])), 1);
    assert_eq!(code(&nbcolor(&["certify", "corpus:c6"])), 2);
    assert_eq!(code(&nbcolor(&["certify", "corpus:k4", "--r", "soon"])), 1);
}

#[test]
fn color_exports_and_rounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("vc");
    let o = nbcolor(&["--format", "json", "color", "corpus:petersen", "--maxcut", "10000", "--out-dir", s(&out)]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert!((j["kappa"].as_f64().unwrap() - 3.12132).abs() < 1e-5);
    assert!((j["guarantee"].as_f64().unwrap() - 3.12132).abs() < 1e-5);
    let mean = j["maxcut"]["mean_cut"].as_f64().unwrap();
    let se = j["maxcut"]["std_error"].as_f64().unwrap();
    assert!((mean - 9.844).abs() < 3.0 * se + 1e-3, "{mean} +- {se}");
    assert_eq!(j["maxcut"]["exhaustive"], 12);
    assert!(out.join("gram.mtx").exists());

    let m = json(&nbcolor(&["--format", "json", "maxcut", "corpus:petersen", "--vectors", s(&out.join("vectors.txt")), "--trials", "2000"]));
    assert!((m["kappa"].as_f64().unwrap() - 3.12132).abs() < 1e-5);
    assert!(m["cut"]["bound"].is_null());
    // Same seed, same vectors: same rounding as constructing them afresh.
    let fresh = json(&nbcolor(&["--format", "json", "maxcut", "corpus:petersen", "--trials", "2000"]));
    assert_eq!(m["cut"]["mean_cut"], fresh["cut"]["mean_cut"]);

    let k4 = nbcolor(&["color", "corpus:k4"]);
    assert_eq!(code(&k4), 2);
    assert!(String::from_utf8_lossy(&k4.stderr).contains("m_max = 1"));
    assert_eq!(code(&nbcolor(&["color", "corpus:petersen", "--m", "1"])), 1);
}

#[test]
fn oracle_and_ihara_reports() {
    let c5 = json(&nbcolor(&["--format", "json", "oracle", "corpus:c5"]));
    assert!((c5["chi_v"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-3);
    let p = json(&nbcolor(&["--format", "json", "--tol", "1e-5", "oracle", "corpus:petersen"]));
    assert!((p["chi_v"].as_f64().unwrap() - 2.5).abs() < 1e-3);
    let big = corpus::cycle(70).to_edge_list();
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&nbcolor(&["oracle", s(&write(dir.path(), "c70.txt", &big))])), 1);

    let o = nbcolor(&["--format", "json", "ihara-check", "corpus:k4"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert!(j["max_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(j["exact"]["det_nb"], "351232");
    assert_eq!(j["samples"].as_array().unwrap().len(), 20);
}

#[test]
fn relabel_accepts_sparse_ids() {
    let dir = tempfile::tempdir().unwrap();
    let text: String = corpus::petersen().edges().map(|(a, b)| format!("{} {}\n", 100 + 7 * a, 100 + 7 * b)).collect();
    let f = write(dir.path(), "sparse.txt", &text);
    // Without relabelling the unused ids become isolated vertices, which
    // the 2-core step discards.
    let plain = json(&nbcolor(&["--format", "json", "analyze", s(&f)]));
    assert_eq!(plain["n"], 164);
    assert_eq!(plain["target"]["reduced"], Value::Bool(true));
    let o = nbcolor(&["--format", "json", "--relabel", "analyze", s(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["n"], 10);
}

#[test]
fn er_sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let p = dir.path().join(name);
        let o = nbcolor(&["--threads", threads, "--seed", "5", "er-sweep", "--n", "400", "--d", "6,4", "--seeds", "3", "--out", s(&p)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let summary = String::from_utf8_lossy(&o.stderr).into_owned();
        (std::fs::read_to_string(p).unwrap(), summary)
    };
    let (a, summary) = run("a.csv", "1");
    let (b, _) = run("b.csv", "3");
    assert!(summary.contains("d = 4:") && summary.contains("d = 6:"), "{summary}");
    let strip = |t: &str| -> Vec<Vec<String>> {
        let mut r = csv::Reader::from_reader(t.as_bytes());
        let h = r.headers().unwrap().clone();
        let at = h.iter().position(|c| c == "runtime_ms").unwrap();
        r.records()
            .map(|rec| rec.unwrap().iter().enumerate().filter(|(i, _)| *i != at).map(|(_, c)| c.to_string()).collect())
            .collect()
    };
    let (ra, rb) = (strip(&a), strip(&b));
    assert_eq!(ra, rb);
    assert_eq!(ra.len(), 6);
    let order: Vec<(String, String)> = ra.iter().map(|r| (r[1].clone(), r[2].clone())).collect();
    assert_eq!(order[0], ("4.0".into(), "5".into()));
    assert_eq!(order[5], ("6.0".into(), "7".into()));

    let certs = dir.path().join("certs");
    let o = nbcolor(&["--format", "json", "er-sweep", "--n", "400", "--d", "6", "--seeds", "2", "--cert-dir", s(&certs)]);
    let j = json(&o);
    assert_eq!(j["rows"].as_array().unwrap().len(), 2);
    assert_eq!(j["summary"][0]["rows"], 2);
    let written = std::fs::read_dir(&certs).unwrap().count();
    assert_eq!(written as u64, j["summary"][0]["certified"].as_u64().unwrap());
}
