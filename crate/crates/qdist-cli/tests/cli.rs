//! End-to-end tests of the qdist binary.

use std::path::Path;
use std::process::{Command, Output};

fn qdist(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdist"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Result records minus timing and config-echo lines, for determinism
/// comparisons across worker counts.
fn stable_lines(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("elapsed_ms=") && !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn gen_validate_distance_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = qdist(dir.path(), &["gen", "steane", "-o", "steane"]);
    assert_eq!(code_of(&out), 0, "{out:?}");
    assert!(dir.path().join("steane.gx").exists());
    assert!(dir.path().join("steane.gz").exists());

    let val = qdist(dir.path(), &["validate", "steane.gx", "steane.gz"]);
    assert_eq!(code_of(&val), 0);
    let text = stdout(&val);
    assert!(text.contains("k=1"), "{text}");
    assert!(text.contains("valid=true"));

    let dist = qdist(
        dir.path(),
        &[
            "distance",
            "--engine",
            "lc",
            "--engine",
            "bip",
            "steane.gx",
            "steane.gz",
        ],
    );
    assert_eq!(code_of(&dist), 0);
    let text = stdout(&dist);
    assert!(text.contains("kind=exact"));
    assert!(text.contains("d=3"));
    assert!(text.contains("agree=true"));
    // config echo covers the run
    assert!(text.starts_with("# qdist distance"));
    assert!(text.contains("engines=lc,bip"));
}

#[test]
fn truncated_budget_exits_2_when_exactness_demanded() {
    let dir = tempfile::tempdir().unwrap();
    qdist(dir.path(), &["gen", "steane", "-o", "s", "--pauli"]);
    let out = qdist(
        dir.path(),
        &[
            "distance",
            "--engine",
            "oracle",
            "--wmax",
            "2",
            "--require-exact",
            "s.pauli",
        ],
    );
    assert_eq!(code_of(&out), 2);
    assert!(stdout(&out).contains("kind=lower_bound"));
    assert!(stdout(&out).contains("w_exhausted=2"));
}

#[test]
fn malformed_pauli_file_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.pauli"), "n 3\nXIZ\nXQZ\n").unwrap();
    let out = qdist(dir.path(), &["distance", "bad.pauli"]);
    assert_eq!(code_of(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("column 2"), "{err}");
}

#[test]
fn anticommuting_rows_fail_validation_with_pair() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.pauli"), "n 2\nXI\nZI\n").unwrap();
    let out = qdist(dir.path(), &["validate", "bad.pauli"]);
    assert_eq!(code_of(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("valid=false"));
    assert!(text.contains("anticommuting_pair=0,1"), "{text}");
}

#[test]
fn worker_count_only_affects_timing() {
    let dir = tempfile::tempdir().unwrap();
    qdist(dir.path(), &["gen", "toric", "--l", "3", "-o", "t3"]);
    let run = |workers: &str| {
        let out = qdist(
            dir.path(),
            &[
                "distance",
                "--engine",
                "lc",
                "--engine",
                "rw",
                "--seed",
                "5",
                "--workers",
                workers,
                "t3.gx",
                "t3.gz",
            ],
        );
        assert_eq!(code_of(&out), 0);
        stable_lines(&stdout(&out))
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn gen_random_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "gen", "random", "--n", "10", "--rows", "8", "--seed", "7", "-o",
    ];
    qdist(dir.path(), &[&args[..], &["a"]].concat());
    qdist(dir.path(), &[&args[..], &["b"]].concat());
    let a = std::fs::read(dir.path().join("a.pauli")).unwrap();
    let b = std::fs::read(dir.path().join("b.pauli")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn clusters_census_and_fit_on_triangle_graph() {
    let dir = tempfile::tempdir().unwrap();
    // one weight-3 row makes the connectivity graph a triangle
    std::fs::write(dir.path().join("tri.pauli"), "n 3\nXXX\n").unwrap();
    let out = qdist(
        dir.path(),
        &["clusters", "--wmax", "3", "--wlo", "1", "tri.pauli"],
    );
    assert_eq!(code_of(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("w,count"));
    assert!(text.contains("1,3"));
    assert!(text.contains("2,3"));
    assert!(text.contains("3,1"));
    assert!(text.contains("fit_w_lo=1"));
    assert!(text.contains("fit_w_hi=3"));
}

#[test]
fn clusters_hgp_census_reports_sector_graph() {
    let dir = tempfile::tempdir().unwrap();
    qdist(dir.path(), &["gen", "toric", "--l", "4", "-o", "t4"]);
    let out = qdist(
        dir.path(),
        &[
            "clusters",
            "--wmax",
            "6",
            "--wlo",
            "3",
            "--dump-graph",
            "t4.edges",
            "t4.gx",
            "t4.gz",
        ],
    );
    assert_eq!(code_of(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("max_degree=6"), "{text}");
    assert!(text.contains("y="));
    assert!(text.contains("z_eff="));
    let edges = std::fs::read_to_string(dir.path().join("t4.edges")).unwrap();
    // 32 vertices of degree 6
    assert_eq!(edges.lines().count(), 32 * 6 / 2);
}

#[test]
fn exponents_curves_carry_known_spot_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = qdist(dir.path(), &["exponents", "--grid", "3"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("technique,family,R,delta,F"));
    // bipartition at R = 1/2 on the quantum GV bound is exactly 1/4
    let c_row = text
        .lines()
        .find(|l| l.starts_with("C_bipartition") && l.contains(",5.00000000000e-1,"))
        .expect("C row at R=0.5");
    let f: f64 = c_row.rsplit(',').next().unwrap().parse().unwrap();
    assert!((f - 0.25).abs() < 1e-9);
    // four techniques, three points each
    let rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && l.contains(",quantum_generic,"))
        .count();
    assert_eq!(rows, 12);
}

#[test]
fn hgp_accepts_alist_classical_inputs() {
    let dir = tempfile::tempdir().unwrap();
    // full circulant of the length-3 repetition check, as alist
    let alist = "3 3\n2 2\n2 2 2\n2 2 2\n1 3\n1 2\n2 3\n1 2\n2 3\n1 3\n";
    std::fs::write(dir.path().join("rep3.alist"), alist).unwrap();
    let out = qdist(
        dir.path(),
        &["gen", "hgp", "--alist", "rep3.alist", "-o", "hgp"],
    );
    assert_eq!(code_of(&out), 0, "{out:?}");
    let val = qdist(dir.path(), &["validate", "hgp.gx", "hgp.gz"]);
    assert_eq!(code_of(&val), 0);
    let text = stdout(&val);
    // the [[18, 2, 3]] toric-equivalent code
    assert!(text.contains("n=18"), "{text}");
    assert!(text.contains("k=2"), "{text}");

    let dist = qdist(
        dir.path(),
        &["distance", "--engine", "lc", "hgp.gx", "hgp.gz"],
    );
    assert!(stdout(&dist).contains("d=3"), "{}", stdout(&dist));
}

#[test]
fn mixed_claims_from_one_budget_stay_consistent() {
    // with wmax=2 every engine reports a bound on the distance-3 code, and
    // the cross-check accepts bounds that admit a common distance
    let dir = tempfile::tempdir().unwrap();
    qdist(dir.path(), &["gen", "steane", "-o", "s", "--pauli"]);
    let out = qdist(
        dir.path(),
        &[
            "distance", "--engine", "oracle", "--engine", "lc", "--wmax", "2", "s.pauli",
        ],
    );
    assert_eq!(code_of(&out), 0);
    assert!(stdout(&out).contains("agree=true"));
}
