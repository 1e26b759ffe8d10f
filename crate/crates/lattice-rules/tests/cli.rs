//! End-to-end checks of the CLI binary: output parses back to the values the
//! library returns in-process, and identical invocations are byte-identical.

use std::process::Command;

use lattice_rules::diophantine::{cfrac_rational, k_value};
use lattice_rules::lattice::{enumerate_points, LatticeSpec};
use lattice_rules::zaremba::zaremba_index;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lattice-rules"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn zaremba_round_trip() {
    let (code, stdout, _) = run(&[
        "zaremba", "--family", "rank1", "--n", "5", "--gen", "2", "--dim", "2",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let spec = LatticeSpec::rank1(5, &[2]).unwrap();
    let lib = zaremba_index(&spec).unwrap();
    assert_eq!(v["rho"].as_f64().unwrap(), lib.rho_f64());
    assert_eq!(v["exact"].as_bool().unwrap(), lib.exact);
    let witness: Vec<f64> = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(witness, lib.witness_f64());
}

#[test]
fn points_round_trip() {
    let (code, stdout, _) = run(&[
        "points", "--family", "rank1", "--n", "4", "--gen", "1", "--dim", "2",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "x1,x2");
    let parsed: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    let lib = enumerate_points(&LatticeSpec::rank1(4, &[1]).unwrap()).unwrap();
    assert_eq!(parsed, lib.points_f64());
}

#[test]
fn cfrac_round_trip() {
    let (code, stdout, _) = run(&["cfrac", "--rational", "3/5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let canonical = cfrac_rational(3, 5).unwrap();
    assert_eq!(v["canonical"].as_str().unwrap(), canonical.render());
    assert_eq!(
        v["k_canonical"].as_u64().unwrap(),
        k_value(&canonical).unwrap()
    );
    assert_eq!(v["variant"].as_str().unwrap(), canonical.variant().render());
    assert_eq!(v["k_variant"].as_u64().unwrap(), 1);
}

#[test]
fn deterministic_output() {
    let args = [
        "converge",
        "--rule",
        "fibonacci",
        "--integrand",
        "bump:1",
        "--nmin",
        "10",
        "--nmax",
        "400",
    ];
    let (c1, out1, _) = run(&args);
    let (c2, out2, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(
        out1, out2,
        "identical argv must produce byte-identical output"
    );
    // threads flag must not change the data stream
    let mut with_threads = vec!["--threads", "2"];
    with_threads.extend_from_slice(&args);
    let (c3, out3, _) = run(&with_threads);
    assert_eq!(c3, 0);
    assert_eq!(out1, out3);
    assert!(out1
        .trim_end()
        .lines()
        .last()
        .unwrap()
        .starts_with("# slope="));
}

#[test]
fn exit_codes() {
    // unknown flag -> 2 (clap usage error)
    let (code, _, _) = run(&[
        "points", "--family", "rank1", "--n", "4", "--gen", "1", "--bogus",
    ]);
    assert_eq!(code, 2);
    // missing required data -> 2
    let (code, _, stderr) = run(&["points", "--family", "kronecker", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("alpha"));
    // resource limit -> 3
    let (code, _, _) = run(&[
        "dyadic-census",
        "--family",
        "rank1",
        "--n",
        "5",
        "--gen",
        "2",
        "--mmax",
        "99",
    ]);
    assert_eq!(code, 3);
    // errors go to stderr, nothing on stdout
    let (_, stdout, stderr) = run(&["zaremba", "--family", "frolov", "--dim", "2", "--a", "4"]);
    assert!(stdout.is_empty());
    assert!(!stderr.is_empty());
}

#[test]
fn bound_and_census_shapes() {
    let (code, stdout, _) = run(&[
        "bound", "--family", "rank1", "--n", "144", "--gen", "89", "--s", "2",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["rho"].as_f64().unwrap(), 55.0);
    assert!(v["bound_sum"].as_f64().unwrap() > 0.0);
    assert!(v["tail_estimate"].as_f64().unwrap() < 0.05 * v["bound_sum"].as_f64().unwrap());

    let (code, stdout, _) = run(&[
        "dyadic-census",
        "--family",
        "rank1",
        "--n",
        "144",
        "--gen",
        "89",
        "--mmax",
        "6",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.trim_end().lines().collect();
    assert_eq!(lines[0], "m1,m2,|m|1,count,bound");
    // all |m|_1 <= 6 rows: 28 of them, every count zero below log2(rho)=log2(55)
    assert_eq!(lines.len(), 1 + 28);
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        let l: u32 = cols[2].parse().unwrap();
        let count: u64 = cols[3].parse().unwrap();
        if (1u64 << l) < 55 {
            assert_eq!(count, 0, "row {row}");
        }
    }
}
