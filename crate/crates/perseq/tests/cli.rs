//! End-to-end tests of the command-line front end against the shipped data
//! files: transcript-style output, exit codes, determinism, and the oracle
//! flag.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn spsq_group_transcripts() {
    let triangle = data("triangle.fsc");
    for (p, q) in [(1, -1), (2, -2), (3, -3), (4, -3), (5, -4), (6, -5)] {
        let out = stdout(&["spsq-group", &triangle, "1", &p.to_string(), &q.to_string()]);
        assert_eq!(
            out,
            format!("Spectral sequence E^1_{{{p},{q}}}\nComponent Z\n"),
            "E^1_{{{p},{q}}}"
        );
    }
    // A trivial group prints only the header.
    let out = stdout(&["spsq-group", &triangle, "1", "4", "-4"]);
    assert_eq!(out, "Spectral sequence E^1_{4,-4}\n");
}

#[test]
fn persistence_transcripts() {
    let triangle = data("triangle.fsc");
    let out = stdout(&["prst-hmlg-group", &triangle, "6", "7", "1"]);
    assert_eq!(out, "Persistent Homology BD^{6,7}_1\nComponent Z\n");

    let out = stdout(&["total-prst-hmlg-group", &triangle, "7", "7", "0"]);
    assert_eq!(out, "Persistent Homology H^{7,7}_0\nComponent Z\n");

    // Stages past the final one are clamped, matching transcript usage.
    let out = stdout(&["total-prst-hmlg-group", &triangle, "7", "99", "0"]);
    assert_eq!(out, "Persistent Homology H^{7,99}_0\nComponent Z\n");

    let staircase = data("staircase.fcc");
    let out = stdout(&[
        "triple-prst-hmlg-group",
        &staircase,
        "1",
        "1",
        "4",
        "1",
        "--start",
        "1",
    ]);
    assert_eq!(out, "Persistent Homology H^{1,1,4}_1\nComponent Z/8Z\n");

    let extension = data("extension.fcc");
    let out = stdout(&[
        "total-prst-hmlg-group",
        &extension,
        "3",
        "4",
        "1",
        "--start",
        "1",
    ]);
    assert_eq!(out, "Persistent Homology H^{3,4}_1\nComponent Z/4Z\n");

    // Infinite death stage.
    let out = stdout(&["prst-hmlg-group", &triangle, "1", "inf", "0"]);
    assert_eq!(out, "Persistent Homology BD^{1,inf}_0\nComponent Z\n");
}

#[test]
fn oracle_and_formula_agree_via_cli() {
    let staircase = data("staircase.fcc");
    for k in ["2", "3", "4", "5", "6"] {
        let args = ["prst-hmlg-group", &staircase, "1", k, "1", "--start", "1"];
        let direct = stdout(&args);
        let mut with_oracle: Vec<&str> = args.to_vec();
        with_oracle.push("--oracle");
        assert_eq!(direct, stdout(&with_oracle), "BD^{{1,{k}}}");
    }
}

#[test]
fn generators_flag_prints_cycles() {
    let triangle = data("triangle.fsc");
    let out = stdout(&["prst-hmlg-group", &triangle, "6", "7", "1", "--generators"]);
    assert!(out.contains("generator"), "{out}");
    assert!(out.contains("(0 1)"), "{out}");
}

#[test]
fn field_mode_ranks() {
    let triangle = data("triangle.fsc");
    let out = stdout(&["prst-hmlg-group", &triangle, "2", "4", "0", "--field", "Q"]);
    assert_eq!(out, "Persistent Homology BD^{2,4}_0\nComponent Q\n");
    let out = stdout(&["total-prst-hmlg-group", &triangle, "3", "3", "0", "--field", "2"]);
    assert_eq!(out.matches("Component Z/2Z").count(), 3);
    // Non-prime characteristics are a domain error (exit 1).
    let out = run(&["prst-hmlg-group", &triangle, "2", "4", "0", "--field", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_inequality_reports() {
    let interval = data("interval.fsc");
    let out = stdout(&["check-inequality", &interval, "1", "1"]);
    assert!(out.contains("lhs=1 rhs=0 STRICT"), "{out}");
    let triangle = data("triangle.fsc");
    let out = stdout(&["check-inequality", &triangle, "1", "1"]);
    assert!(out.contains("lhs=3 rhs=1 STRICT"), "{out}");
}

#[test]
fn barcode_text_and_svg() {
    let triangle = data("triangle.fsc");
    let out = stdout(&["barcode", &triangle]);
    assert!(out.contains("dim 0  [1,inf)"), "{out}");
    assert!(out.contains("dim 0  [2,4)"), "{out}");
    assert!(out.contains("dim 0  [3,5)"), "{out}");
    assert!(out.contains("dim 1  [6,7)"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("triangle.svg");
    let _ = stdout(&["barcode", &triangle, "--svg", svg_path.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));

    // The extension example renders two bars plus a joined link row.
    let extension = data("extension.fcc");
    let out = stdout(&["barcode", &extension, "--mode", "alt", "--start", "1"]);
    assert!(out.contains("joined [1,6)+[3,6)  Z/4"), "{out}");
}

#[test]
fn verify_equivalence_report() {
    let eqv = data("three_groups.eqv");
    let out = stdout(&["verify-equivalence", &eqv]);
    assert!(out.contains("left (D => C): ok"), "{out}");
    assert!(out.contains("right (D => EC): ok"), "{out}");
    assert!(out.contains("homotopy order h2: 1"), "{out}");
    assert!(out.contains("r > 1"), "{out}");
}

#[test]
fn deterministic_output() {
    let staircase = data("staircase.fcc");
    let args = ["barcode", &staircase, "--start", "1"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn tsv_format() {
    let triangle = data("triangle.fsc");
    let out = stdout(&["prst-hmlg-group", &triangle, "6", "7", "1", "--format", "tsv"]);
    assert_eq!(out, "component\tZ\n");
    let out = stdout(&["check-inequality", &triangle, "1", "1", "--format", "tsv"]);
    assert_eq!(out, "lhs\t3\nrhs\t1\nstrict\ttrue\n");
}

#[test]
fn exit_codes() {
    // Domain error: malformed file.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fsc");
    std::fs::write(&bad, "1 0\n2 0 1\n").unwrap(); // missing vertex 1
    let out = run(&["barcode", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("missing face"), "{err}");

    // Stage-order violation: domain error.
    let triangle = data("triangle.fsc");
    let out = run(&["prst-hmlg-group", &triangle, "5", "5", "0"]);
    assert_eq!(out.status.code(), Some(1));

    // Usage error: unknown subcommand.
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error: missing arguments.
    let out = run(&["spsq-group"]);
    assert_eq!(out.status.code(), Some(2));
}
