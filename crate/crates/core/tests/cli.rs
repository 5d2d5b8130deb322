use std::path::{Path, PathBuf};
use std::process::Command;

use sparsecvp::cli::run;
use sparsecvp::io::{parse_basis, parse_target};
use sparsecvp::Lattice;

struct Files {
    dir: tempfile::TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Self { dir: tempfile::tempdir().unwrap() };
        f.put("b.txt", "# columns are basis vectors\n2\n2 1\n0 3\n");
        f.put("linf.json", r#"{"type":"lp","p":"inf","radius":"1"}"#);
        f.put("l1.json", r#"{"type":"lp","p":"1","radius":"3/2"}"#);
        f.put("t.txt", "7/3 -5/4\n");
        f
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }
}

fn sparsecvp(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sparsecvp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Checks every `POINT z | x` line against the basis; returns the last line.
fn check_points(basis: &Lattice, out: &str) -> String {
    let mut last = String::new();
    for line in out.lines() {
        if let Some(rest) = line.strip_prefix("POINT ") {
            let (z, x) = rest.split_once(" | ").unwrap();
            let x = parse_target(x, basis.dim()).unwrap();
            assert!(basis.contains(&x).unwrap(), "{line}");
            let z: Vec<i64> = z.split(' ').map(|v| v.parse().unwrap()).collect();
            let y = basis.point(z.into_iter().map(Into::into).collect());
            assert_eq!(y.ambient, x);
        }
        last = line.to_string();
    }
    last
}

#[test]
fn cvp_approx_points_round_trip() {
    let f = Files::new();
    let args = ["cvp-approx", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--target", &f.path("t.txt"), "--eps", "1/2"];
    let (code, out, _) = sparsecvp(&args);
    assert_eq!(code, 0);
    let basis = parse_basis(&std::fs::read_to_string(f.path("b.txt")).unwrap()).unwrap();
    assert!(check_points(&basis, &out).starts_with("BOUND "));
}

#[test]
fn enum_and_svp_output() {
    let f = Files::new();
    let basis = parse_basis(&std::fs::read_to_string(f.path("b.txt")).unwrap()).unwrap();
    let (code, out, _) = sparsecvp(&["enum", "--basis", &f.path("b.txt"), "--body", &f.path("l1.json"), "--scale", "2"]);
    assert_eq!(code, 0);
    assert_eq!(check_points(&basis, &out), format!("COUNT {}", out.lines().count() - 1));
    let (code, out, _) = sparsecvp(&["svp", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json")]);
    assert_eq!(code, 0);
    assert_eq!(check_points(&basis, &out), "NORM 2");
    let (code, out, _) = sparsecvp(&["svp", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["norm"], "2");
}

#[test]
fn sparsify_writes_basis_and_report() {
    let f = Files::new();
    let report = f.path("r.json");
    let (code, out, _) = sparsecvp(&["sparsify", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--t", "400", "--report", &report]);
    assert_eq!(code, 0);
    let sub = parse_basis(&out).unwrap();
    let base = parse_basis(&std::fs::read_to_string(f.path("b.txt")).unwrap()).unwrap();
    assert!(sub.is_sublattice_of(&base));
    assert_eq!(sub.hnf_basis(), *sub.basis());
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["schema"], 1);
    assert_eq!(rep["mode"], "deterministic");
    assert!(rep["levels"].as_array().unwrap().iter().any(|l| !l["p"].is_null()));
    let sparse = f.put("s.txt", &out);
    let (code, out, _) = sparsecvp(&["verify", "sparsifier", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--sparse", &sparse, "--t", "400", "--grid", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS sparsifier"));
}

#[test]
fn verify_failure_exits_3() {
    let f = Files::new();
    // index-4 sublattice; inflation at t = 1/4 must fail somewhere
    let sparse = f.put("s.txt", "2\n4 2\n0 6\n");
    let (code, out, _) = sparsecvp(&["verify", "sparsifier", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--sparse", &sparse, "--t", "1/4"]);
    assert_eq!(code, 3);
    assert!(out.starts_with("FAIL"));
    let outside = f.put("o.txt", "2\n1 0\n0 1\n");
    let (code, _, err) = sparsecvp(&["verify", "sparsifier", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--sparse", &outside, "--t", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("sublattice"));
}

#[test]
fn verify_commands_pass() {
    let f = Files::new();
    let cases: [&[&str]; 4] = [
        &["verify", "primegap", "--from", "1001", "--to", "20000"],
        &["verify", "sumset", "--p", "7", "--set", "0,1", "--set", "0,3,5"],
        &["verify", "sumset", "--p", "13", "--random", "40"],
        &["verify", "bounds", "--basis", &f.path("b.txt"), "--body", &f.path("l1.json"), "--d", "3/2"],
    ];
    for args in cases {
        let (code, out, err) = sparsecvp(args);
        assert_eq!(code, 0, "{args:?}: {out}{err}");
        assert!(out.starts_with("PASS"));
    }
}

#[test]
fn exit_codes() {
    let f = Files::new();
    let bad = f.put("bad.txt", "# c\n2\n1 0\n0 0.25\n");
    let (code, _, err) = sparsecvp(&["svp", "--basis", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.txt:4:"), "{err}");
    let body = f.put("bad.json", "{\"type\":\"lp\",\n \"p\":\"inf\",\n \"size\":1}");
    let (code, _, err) = sparsecvp(&["enum", "--basis", &f.path("b.txt"), "--body", &body, "--scale", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.json:3:"), "{err}");
    let (code, _, _) = sparsecvp(&["svp", "--basis", &f.path("missing.txt")]);
    assert_eq!(code, 1);
    let (code, _, _) = sparsecvp(&["cvp-approx", "--basis", &f.path("b.txt")]);
    assert_eq!(code, 1);
    let (code, _, _) = sparsecvp(&["cvp-approx", "--basis", &f.path("b.txt"), "--body", &f.path("linf.json"), "--target", &f.path("t.txt"), "--eps", "3/2"]);
    assert_eq!(code, 2);
    let singular = f.put("sing.txt", "2\n1 2\n2 4\n");
    let (code, _, _) = sparsecvp(&["svp", "--basis", &singular]);
    assert_eq!(code, 2);
    let simplex = f.put("simplex.json", r#"{"type":"polytope","A":[[1,0],[0,1],[-1,-1]],"b":[1,1,1]}"#);
    let (code, _, err) = sparsecvp(&["svp", "--basis", &f.path("b.txt"), "--body", &simplex]);
    assert_eq!(code, 2, "{err}");
    let (code, out, _) = sparsecvp(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("cvp-approx"));
}

#[test]
fn binary_matches_library_entry_point() {
    let f = Files::new();
    let args = ["cvp-l2", "--basis", &f.path("b.txt"), "--target", &f.path("t.txt")];
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_sparsecvp"));
    assert!(Path::new(&bin).exists());
    let output = Command::new(&bin).args(args).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let (_, out, _) = sparsecvp(&args);
    assert_eq!(String::from_utf8(output.stdout).unwrap(), out);
    assert!(out.lines().last().unwrap().starts_with("DISTANCE "));
}
