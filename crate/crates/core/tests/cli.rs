use std::fs;
use std::path::{Path, PathBuf};

use dirclust::cli::{run, EXIT_COMPLEXITY, EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_PROPERTY_FAILED};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dirclust(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dirclust").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const C3: &str = "a,b,c\n0,1,5\n5,0,1\n1,5,0\n";

fn c3(dir: &Path) -> String {
    write(dir, "c3.csv", C3).display().to_string()
}

#[test]
fn cluster_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = c3(dir.path());
    let r = dirclust(&["cluster", "--input", &input, "--method", "reciprocal"]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, "(a:5,b:5,c:5)5;\n"));
    let nr = dirclust(&["cluster", "--input", &input, "--method", "nonreciprocal", "--format", "csv"]);
    assert_eq!(nr.stdout, "a,b,c\n0,1,1\n1,0,1\n1,1,0\n");
    let json = dirclust(&["cluster", "--input", &input, "--method", "nonreciprocal", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(doc["merges"][0]["resolution"], 1.0);
}

#[test]
fn cluster_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let input = c3(dir.path());
    for args in [
        vec!["--method", "semireciprocal", "--t", "3"],
        vec!["--method", "grafting", "--beta", "5"],
        vec!["--method", "representable", "--representers", "cycles"],
        vec!["--method", "representable", "--representers", "cycles:4"],
    ] {
        let mut all = vec!["cluster", "--input", input.as_str()];
        all.extend(args);
        let r = dirclust(&all);
        assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, "(a:1,b:1,c:1)1;\n"), "{all:?}");
    }
    let omega3 = dirclust(&[
        "cluster", "--input", &input, "--method", "representable", "--representers", "omega3:5",
    ]);
    assert_eq!(omega3.stdout, "(a:1,b:1,c:1)1;\n");
    let omega3 = dirclust(&[
        "cluster", "--input", &input, "--method", "representable", "--representers", "omega3:2",
    ]);
    assert_eq!(omega3.stdout, "(a:2.5,b:2.5,c:2.5)2.5;\n");
}

#[test]
fn missing_method_parameter_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = c3(dir.path());
    let r = dirclust(&["cluster", "--input", &input, "--method", "grafting"]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.stderr.contains("--beta"), "{}", r.stderr);
    assert_eq!(dirclust(&["cluster", "--bogus"]).code, EXIT_INVALID);
}

#[test]
fn invalid_network_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "a,b\n0,1\n-2,0\n");
    let r = dirclust(&["validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.stderr.contains("bad.csv:3"), "{}", r.stderr);
    let ok = dirclust(&["validate", "--input", &c3(dir.path())]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stderr);
}

#[test]
fn missing_file_is_an_io_error() {
    let r = dirclust(&["cluster", "--input", "/nonexistent/x.csv"]);
    assert_eq!(r.code, EXIT_IO);
}

#[test]
fn budget_guard() {
    let dir = tempfile::tempdir().unwrap();
    let reps = write(
        dir.path(),
        "path.json",
        r#"{"representers": [{"nodes": ["a", "b", "c"], "arcs": [
            {"from": "a", "to": "b", "weight": 1}, {"from": "b", "to": "c", "weight": 1}]}]}"#,
    );
    let input = c3(dir.path());
    let args = [
        "cluster", "--input", &input, "--method", "representable", "--representers", reps.to_str().unwrap(),
    ];
    assert_eq!(dirclust(&args).code, EXIT_OK);
    let mut limited = args.to_vec();
    limited.extend(["--budget", "10"]);
    let r = dirclust(&limited);
    assert_eq!(r.code, EXIT_COMPLEXITY, "{}", r.stderr);
}

#[test]
fn budget_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let input = c3(dir.path());
    std::env::set_var("DIRCLUST_BUDGET", "5");
    let r = dirclust(&["symmetrize", "--input", &input, "--representers", "cycles:4"]);
    std::env::remove_var("DIRCLUST_BUDGET");
    // closed forms do not enumerate, so the budget does not apply
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout, "a,b,c\n0,1,1\n1,0,1\n1,1,0\n");
}

#[test]
fn cut_network_and_ultrametric() {
    let dir = tempfile::tempdir().unwrap();
    let input = c3(dir.path());
    let r = dirclust(&["cut", "--input", &input, "--method", "nonreciprocal", "--delta", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["blocks"], serde_json::json!([["a", "b", "c"]]));
    let u = write(dir.path(), "u.csv", "a,b,c\n0,1,2\n1,0,2\n2,2,0\n");
    let r = dirclust(&["cut", "--input", u.to_str().unwrap(), "--ultrametric", "--delta", "1.5"]);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["blocks"], serde_json::json!([["a", "b"], ["c"]]));
    let r = dirclust(&["cut", "--input", u.to_str().unwrap(), "--ultrametric", "--delta", "-1"]);
    assert_eq!(r.code, EXIT_INVALID);
}

#[test]
fn distance_between_two_node_networks() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.csv", "p,q\n0,2\n3,0\n");
    let y = write(dir.path(), "y.csv", "p,q\n0,2\n5,0\n");
    let r = dirclust(&["distance", x.to_str().unwrap(), y.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, "1\n"));
    let r = dirclust(&["distance", x.to_str().unwrap(), y.to_str().unwrap(), "--compare-outputs"]);
    assert_eq!(r.stdout, "1\n");
}

#[test]
fn normalize_uses_then_cluster() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "uses.csv", "s1,s2\n0,3\n2,1\n");
    let out = dir.path().join("net.csv");
    let r = dirclust(&[
        "normalize-uses", "--input", table.to_str().unwrap(), "-o", out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let net = fs::read_to_string(&out).unwrap();
    assert_eq!(net, format!("s1,s2\n0,{}\n1,0\n", 4.0 / 3.0));
    let r = dirclust(&["cluster", "--input", out.to_str().unwrap()]);
    assert_eq!(r.stdout, format!("(s1:{0},s2:{0}){0};\n", 4.0 / 3.0));

    let zero = write(dir.path(), "zero.csv", "s1,s2\n1,0\n2,1\n");
    let r = dirclust(&["normalize-uses", "--input", zero.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_INVALID);
    let r = dirclust(&["normalize-uses", "--input", zero.to_str().unwrap(), "--zero-use", "cap=100"]);
    assert_eq!(r.stdout, "s1,s2\n0,100\n1.5,0\n");
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let witness = write(
        dir.path(),
        "witness.csv",
        "x1,x2,x3,x4\n0,1,2,2\n2,0,1,2\n2,2,0,1\n1,2,2,0\n",
    );
    let r = dirclust(&[
        "check", "--property", "excisive", "--method", "semireciprocal", "--t", "3",
        "--input", witness.to_str().unwrap(), "--delta", "1.5",
    ]);
    assert_eq!(r.code, EXIT_PROPERTY_FAILED);
    let report: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["passed"], false);

    let r = dirclust(&[
        "check", "--property", "excisive", "--method", "representable", "--representers", "omega3",
        "--trials", "20", "--seed", "7",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);

    let r = dirclust(&["check", "--property", "scale", "--method", "grafting", "--beta", "3", "--seed", "1"]);
    assert_eq!(r.code, EXIT_PROPERTY_FAILED);
    let report: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(report["witness"]["seed"].is_u64(), "{report}");

    for property in ["value", "transformation", "sandwich", "stability"] {
        let r = dirclust(&[
            "check", "--property", property, "--method", "nonreciprocal", "--trials", "10", "--nodes", "4",
        ]);
        assert_eq!(r.code, EXIT_OK, "{property}: {}", r.stdout);
    }
}

#[test]
fn check_is_reproducible_from_seed() {
    let args = [
        "check", "--property", "excisive", "--method", "semireciprocal", "--t", "3", "--seed", "3",
        "--trials", "200", "--nodes", "4",
    ];
    let a = dirclust(&args);
    let b = dirclust(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.code, b.code);
}
