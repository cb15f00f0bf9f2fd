use std::path::Path;
use std::process::{Command, Output};

use mastercount::ibp::{laporta, ReductionTable, SeedBound};
use mastercount::sunset::{
    assemble_main, build_representation, collapse, equal_mass_specialize, find_relation,
    HyperCombo, Relation, J121,
};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mastercount"))
        .args(args)
        .env_remove("MASTERCOUNT_PREC")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], prec: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mastercount"))
        .args(args)
        .env("MASTERCOUNT_PREC", prec)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn repr_shows_collapsed_terms() {
    let o = run(&[
        "sunset", "repr", "--sigma", "1", "--beta", "1", "--alpha", "1",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let after = s
        .split("after collapse:")
        .nth(1)
        .expect("collapsed section");
    assert!(after.contains("2F1[1/2,3-n; n/2]"), "{s}");
    assert!(after.contains("3F2[(n-1)/2,1,2-n/2; n-1,n/2]"), "{s}");
    assert!(s.split("after collapse:").next().unwrap().contains("4F3["));
}

#[test]
fn repr_json_round_trips() {
    let o = run(&[
        "--json", "sunset", "repr", "--sigma", "1", "--beta", "2", "--alpha", "1",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let full: HyperCombo = serde_json::from_value(v["terms"].clone()).unwrap();
    let short: HyperCombo = serde_json::from_value(v["collapsed"].clone()).unwrap();
    let want = build_representation(J121).unwrap();
    assert_eq!(full, want);
    assert_eq!(short, collapse(&want));
}

#[test]
fn repr_rejects_nonpositive_indices() {
    let o = run(&[
        "sunset", "repr", "--sigma", "0", "--beta", "1", "--alpha", "1",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("representation undefined"));
    let o = run(&[
        "sunset", "repr", "--sigma", "1", "--beta", "-1", "--alpha", "1",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn relation_text() {
    let o = run(&["sunset", "relation"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("lambda = (3*n-8, z, 2)"), "{s}");
    assert!(s.contains("mu = n-2"), "{s}");
    assert!(s.contains("coefficient of J(1,1,1): 3*n-8"));
    assert!(s.contains("coefficient of J(1,2,1): 4*m2"));
    assert!(s.contains("coefficient of J(1,1,2): 2*M2"));
    assert!(s.contains("= 2*(M2)^(n-3)*"));
    for g in ["Γ(n/2-1)", "Γ(3-n)", "Γ(2-n/2)"] {
        assert!(s.contains(g), "{s}");
    }
    assert!(s.contains("equal-mass coefficient of J(1,1,2): 6*m2"));
}

#[test]
fn relation_json_round_trips() {
    let main = assemble_main(&find_relation().unwrap()).unwrap();
    let o = run(&["--json", "sunset", "relation"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["coeffs"]["J(1,2,1)"], "4*m2");
    assert_eq!(Relation::from_json(&v).unwrap(), main);

    let o = run(&["--json", "sunset", "relation", "--equal-mass"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["coeffs"]["J(1,1,2)"], "6*m2");
    assert_eq!(
        Relation::from_json(&v).unwrap(),
        equal_mass_specialize(&main).unwrap()
    );
}

#[test]
fn verify_exit_codes() {
    let o = run(&[
        "sunset", "verify", "--eps", "1/4", "--z", "3/10", "--prec", "50",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&[
        "--json", "sunset", "verify", "--eps", "1/4", "--z", "3/10", "--prec", "50",
    ]);
    let v = json(&o);
    assert_eq!(v["pass"], true);
    let r: f64 = v["residual"].as_str().unwrap().parse().unwrap();
    assert!(r < 1e-40);

    let o = run(&["sunset", "verify", "--eps", "1/2", "--z", "3/10"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("gamma pole"));

    let o = run(&[
        "sunset", "verify", "--eps", "1/4", "--z", "0", "--prec", "50",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = run(&["sunset", "verify", "--eps", "1/4", "--z", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("outside convergence domain"));
}

#[test]
fn decimals_and_bad_precision_rejected() {
    let o = run(&["sunset", "verify", "--eps", "0.25", "--z", "3/10"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("decimal"));
    let o = run(&[
        "sunset", "verify", "--eps", "1/4", "--z", "3/10", "--prec", "9",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn precision_from_environment() {
    let o = run_env(&["sunset", "verify", "--eps", "1/4", "--z", "3/10"], "30");
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("tolerance = 1e-20"));
    let o = run_env(
        &[
            "sunset", "verify", "--eps", "1/4", "--z", "3/10", "--prec", "40",
        ],
        "30",
    );
    assert!(stdout(&o).contains("tolerance = 1e-30"));
    let o = run_env(&["sunset", "verify", "--eps", "1/4", "--z", "3/10"], "5");
    assert_eq!(code(&o), 2);
}

#[test]
fn sunset_eval() {
    let o = run(&[
        "--json", "sunset", "eval", "--sigma", "1", "--beta", "1", "--alpha", "1", "--eps", "1/4",
        "--z", "0",
    ]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["value"].as_str().unwrap().starts_with('-'));
    let o = run(&[
        "sunset", "eval", "--sigma", "1", "--beta", "2", "--alpha", "1", "--eps", "1/4", "--z", "0",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hyper_eval_matches_log() {
    let o = run(&[
        "hyper",
        "eval",
        "2F1[1,1;2]",
        "--z",
        "1/2",
        "--eps",
        "0",
        "--prec",
        "30",
    ]);
    assert_eq!(code(&o), 0);
    // -ln(1-z)/z at z = 1/2 is 2 ln 2.
    assert_eq!(stdout(&o).trim(), "1.38629436111989061883446424292");
}

#[test]
fn hyper_count() {
    let o = run(&["hyper", "count", "4F3[3-n,2-n/2,1/2,1; 2-n/2,1,n/2]"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "2".into()));
    let o = run(&["hyper", "count", "1F0[1/2]"]);
    assert_eq!((code(&o), stdout(&o).trim().to_string()), (0, "1".into()));
    let o = run(&[
        "--json",
        "hyper",
        "count",
        "4F3[3-n,2-n/2,1/2,1; 2-n/2,1,n/2]",
    ]);
    assert_eq!(json(&o)["collapsed"], "2F1[1/2,3-n; n/2]");
}

#[test]
fn hyper_parse_error_has_caret() {
    let o = run(&["hyper", "count", "2F1[1,1,;2]"]);
    assert_eq!(code(&o), 2);
    let e = stderr(&o);
    let lines: Vec<&str> = e.lines().collect();
    assert!(lines[0].contains("parse error"), "{e}");
    let col = lines[2].find('^').expect("caret line");
    assert_eq!(&lines[1][col..col + 1], ";", "{e}");

    let o = run(&["hyper", "eval", "2F1[a;2]", "--z", "1/2", "--eps", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hyper_reduce() {
    let o = run(&["hyper", "reduce", "2F1[3/2,3-n;n/2]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).trim(),
        "2F1[3/2,3-n; n/2] = (2*θ+1) 2F1[1/2,3-n; n/2]"
    );

    let o = run(&["--json", "hyper", "reduce", "3F2[1,3/2,4-n;2,n/2]"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["basis"], "2F1[1/2,3-n; n/2]");
    assert_eq!(v["op"].as_array().unwrap().len(), 2);

    let o = run(&[
        "hyper",
        "reduce",
        "2F1[1/3,1;2]",
        "--target",
        "2F1[1/2,1;2]",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not reachable"));
}

#[test]
fn ibp_masters() {
    let o = run(&["ibp", "masters"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = stdout(&o);
    for m in [
        "I(1,1,1,0,0)",
        "I(1,2,1,0,0)",
        "I(1,1,2,0,0)",
        "I(0,1,1,0,0)  (Γ-expressible)",
    ] {
        assert!(s.contains(m), "{s}");
    }
    assert!(s.contains("non-Γ masters: 3"));

    let o = run(&["--json", "ibp", "masters", "--with-main-relation"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["non_gamma_count"], 2);
    assert_eq!(
        v["non_gamma"],
        serde_json::json!(["1,1,1,0,0", "1,1,2,0,0"])
    );
}

#[test]
fn ibp_reduce_and_check() {
    let o = run(&["ibp", "reduce", "--target", "1,0,2,0,0"]);
    assert_eq!(
        (code(&o), stdout(&o).trim().to_string()),
        (0, "I(1,0,2,0,0) = 0".into())
    );
    let o = run(&["--json", "ibp", "reduce", "--target", "1,1,1,0,0"]);
    assert_eq!(json(&o)["terms"], serde_json::json!([["1,1,1,0,0", "1"]]));

    let o = run(&[
        "ibp",
        "check",
        "--target",
        "1,1,3,0,0",
        "--eps",
        "1/4",
        "--z",
        "3/10",
        "--prec",
        "40",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = run(&["ibp", "reduce", "--target", "1,1,1,1,0"]);
    assert_eq!(code(&o), 2);
    let o = run(&["ibp", "reduce", "--target", "1,1,1"]);
    assert_eq!(code(&o), 2);
    let o = run(&["ibp", "reduce", "--target", "5,1,1,0,0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not reducible"));
    let o = run(&["ibp", "masters", "--seed-dots", "1"]);
    assert_eq!(code(&o), 2);
}

fn cached(args: &[&str], path: &Path) -> Output {
    let mut a = args.to_vec();
    a.extend(["--table", path.to_str().unwrap()]);
    run(&a)
}

#[test]
fn table_cache_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let args = ["--json", "ibp", "reduce", "--target", "2,1,2,0,0"];
    let fresh = run(&args);
    let miss = cached(&args, &path);
    assert!(path.exists());
    let written = std::fs::read_to_string(&path).unwrap();
    let hit = cached(&args, &path);
    assert_eq!(code(&fresh), 0);
    assert_eq!(fresh.stdout, miss.stdout);
    assert_eq!(fresh.stdout, hit.stdout);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), written);

    // The file is a valid table for the default bounds.
    let t = ReductionTable::load(&path).unwrap();
    assert_eq!(t, laporta(SeedBound::default()).unwrap());

    // A different bound recomputes and replaces the cache.
    let mut a = args.to_vec();
    a.extend(["--seed-dots", "3"]);
    let other = cached(&a, &path);
    assert_eq!(other.stdout, fresh.stdout);
    assert_eq!(
        ReductionTable::load(&path).unwrap().bound,
        SeedBound::new(3, 1).unwrap()
    );
}

fn tampered(dir: &Path, edit: impl FnOnce(&mut Value)) -> std::path::PathBuf {
    let mut v = laporta(SeedBound::default()).unwrap().to_json();
    edit(&mut v);
    let p = dir.join("tampered.json");
    std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    p
}

#[test]
fn corrupted_table_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let p = tampered(dir.path(), |v| {
        v["entries"]["1,1,3,0,0"][0][1] = Value::from("1");
    });
    let o = cached(
        &[
            "ibp",
            "check",
            "--target",
            "1,1,3,0,0",
            "--eps",
            "1/4",
            "--z",
            "3/10",
            "--prec",
            "40",
        ],
        &p,
    );
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("verification failed"));
}

#[test]
fn master_count_contradiction() {
    let dir = tempfile::tempdir().unwrap();
    let p = tampered(dir.path(), |v| {
        v["masters"]
            .as_array_mut()
            .unwrap()
            .push(Value::from("1,1,1,-1,0"));
    });
    let o = cached(&["ibp", "masters"], &p);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("contradiction"));
}

#[test]
fn unreadable_table_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{not json").unwrap();
    let o = cached(&["ibp", "masters"], &p);
    assert_eq!(code(&o), 2);
}
