use std::process::{Command, Output};

use serde_json::Value;

fn ramsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value(args: &[&str]) -> String {
    let out = ramsum(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out).trim().to_string()
}

#[test]
fn documented_values() {
    assert_eq!(value(&["R", "--moduli", "3,3", "--shifts", "1,1"]), "5");
    assert_eq!(value(&["R", "--moduli", "3,3"]), "5");
    assert_eq!(value(&["T", "--moduli", "2,3", "--a", "7"]), "0");
    assert_eq!(value(&["T", "--moduli", "6,6", "--a", "0"]), "12");
    assert_eq!(value(&["E", "--moduli", "8", "--polys", "x^2-1"]), "2");
    assert_eq!(value(&["E", "--moduli", "6,6", "--polys", "x;x"]), "2");
    assert_eq!(value(&["E", "--moduli", "6,6", "--shifts", "0,1"]), "1");
    assert_eq!(value(&["R", "--moduli", "3,3", "--shifts", "1,2"]), "-4");
    assert_eq!(value(&["roots", "--moduli", "8", "--polys", "x^2-1"]), "4");
    assert_eq!(value(&["c", "--moduli", "6", "--a", "0"]), "2");
    assert_eq!(value(&["alpha", "--r", "2", "--prime-bound", "2"]), "0.6875");
}

#[test]
fn verify_suite_passes() {
    let out = ramsum(&["verify", "--suite", "orthogonality", "--max", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("orthogonality: ok"));
}

#[test]
fn exit_codes() {
    let arity = ramsum(&["E", "--moduli", "6,6", "--polys", "x"]);
    assert_eq!(arity.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&arity.stderr).contains("1 polynomial but 2 moduli"));

    let parse = ramsum(&["E", "--moduli", "6", "--polys", "3x^^2"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("position 3"));

    assert_eq!(ramsum(&["E", "--moduli", "6", "--polys", "x", "--bogus"]).status.code(), Some(1));
    assert_eq!(ramsum(&["E", "--moduli", "6,a", "--polys", "x"]).status.code(), Some(1));
    assert_eq!(ramsum(&["alpha", "--r", "1"]).status.code(), Some(2));
    assert_eq!(ramsum(&["T", "--moduli", "6", "--a", "1", "--r", "2"]).status.code(), Some(1));
    let big = ramsum(&["R", "--moduli", "1000003,999983", "--shifts", "1,2", "--strategy", "direct"]);
    assert_eq!(big.status.code(), Some(3));
    assert_eq!(ramsum(&["verify", "--suite", "missing"]).status.code(), Some(2));
}

#[test]
fn json_errors_are_objects() {
    let out = ramsum(&["asymptotic", "--r", "2", "--x", "2000000", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"]["kind"], "scale");
    assert!(v["error"]["message"].as_str().unwrap().contains("sieve"));
}

/// Every JSON row can be fed back as arguments and reproduces its value.
#[test]
fn json_round_trip() {
    let inputs: Vec<Vec<&str>> = vec![
        vec!["E", "--range", "1..12", "--polys", "x^2-1;x+1"],
        vec!["R", "--range", "1..12", "--shifts", "0,-3"],
        vec!["E", "--moduli", "4,6,9", "--polys", "x;2x-1;x^2+x+1"],
        vec!["R", "--moduli", "12,18", "--polys", "x-2;x^2-1"],
    ];
    for args in inputs {
        let mut with_json = args.clone();
        with_json.extend(["--format", "json"]);
        let parsed: Value = serde_json::from_str(&value(&with_json)).unwrap();
        let rows = match parsed {
            Value::Array(rows) => rows,
            row => vec![row],
        };
        assert!(!rows.is_empty());
        for row in rows {
            let moduli: Vec<String> = row["moduli"]
                .as_array()
                .unwrap()
                .iter()
                .map(|m| m.as_u64().unwrap().to_string())
                .collect();
            let moduli = moduli.join(",");
            let mut again = vec![args[0], "--moduli", &moduli];
            let shifts;
            if let Some(p) = row.get("polys") {
                again.extend(["--polys", p.as_str().unwrap()]);
            } else {
                shifts = row["shifts"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|a| a.as_i64().unwrap().to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                again.extend(["--shifts", &shifts]);
            }
            again.extend(["--format", "json"]);
            let rerun: Value = serde_json::from_str(&value(&again)).unwrap();
            assert_eq!(rerun["value"], row["value"], "{again:?}");
        }
    }
}

/// The literal route and the default route print identical values.
#[test]
fn direct_matches_fast() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["--range", "1..30", "--polys", "x^2-1"],
        vec!["--range", "1..24", "--polys", "x;x-1"],
        vec!["--range", "1..24", "--shifts", "0,1"],
        vec!["--range", "1..24", "--shifts", "2,-5"],
        vec!["--range", "1..12", "--shifts", "1,1,1"],
        vec!["--moduli", "12,18,10", "--polys", "2x-1;x^2+x+1;x+1"],
        vec!["--moduli", "5,7,11", "--shifts", "3,-2,8"],
    ];
    for sub in ["E", "R"] {
        for case in &cases {
            let mut base = vec![sub];
            base.extend(case);
            let fast = value(&base);
            for strategy in ["direct", "general"] {
                let mut alt = base.clone();
                alt.extend(["--strategy", strategy]);
                assert_eq!(value(&alt), fast, "{alt:?}");
            }
        }
    }
    for strategy in ["spectral", "direct"] {
        for a in ["0", "1", "-4"] {
            let closed = value(&["T", "--range", "1..12", "--r", "2", "--a", a]);
            let other = value(&["T", "--range", "1..12", "--r", "2", "--a", a, "--strategy", strategy]);
            assert_eq!(closed, other);
        }
    }
    for units in [false, true] {
        let mut args = vec!["roots", "--range", "1..40", "--polys", "x^2-1;x^2+x+1"];
        if units {
            args.push("--units");
        }
        let fast = value(&args);
        args.extend(["--strategy", "direct"]);
        assert_eq!(value(&args), fast);
    }
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "orthogonality,cohen,theorems,multiplicativity,dirichlet,lemmas",
        "--max",
        "8",
    ];
    let first = ramsum(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_ramsum"))
        .args(args)
        .env("RAMSUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first).lines().filter(|l| l.contains(": ok (")).count(), 6);
    assert!(stdout(&first).starts_with("orthogonality:"));
}

#[test]
fn small_average_order_fails_honestly() {
    let out = ramsum(&["verify", "--suite", "average-order", "--max", "8"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("outside 1 ± 0.02"));
}

#[test]
fn bad_thread_setting_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramsum"))
        .args(["c", "--moduli", "5", "--a", "1"])
        .env("RAMSUM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_and_plain_tables() {
    let csv = value(&["c", "--range", "1..4", "--a", "2", "--format", "csv"]);
    assert_eq!(csv, "n,k,value\n1,2,1\n2,2,1\n3,2,-1\n4,2,-2");
    let plain = value(&["c", "--moduli", "4,6", "--a", "2"]);
    assert_eq!(plain, "n=4 k=2: -2\nn=6 k=2: -1");
    let report = value(&["asymptotic", "--r", "2", "--x", "10", "--format", "csv"]);
    assert!(report.starts_with("r,x,empirical,empirical_approx,predicted,ratio,alpha"));
}
