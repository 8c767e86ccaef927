use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn lodim(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lodim"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = lodim(dir, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    lodim(dir, args).status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen(dir: &Path, name: &str, family: &[&str]) {
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", name]);
    ok(dir, &args);
}

#[test]
fn gen_petersen_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.dimacs", &["kneser", "5", "2"]);
    let text = std::fs::read_to_string(dir.path().join("g.dimacs")).unwrap();
    let g = lodim::graph::read_dimacs(&text).unwrap();
    assert_eq!((g.n(), g.edge_count()), (10, 15));
    assert!((0..10).all(|v| g.degree(v) == 3));
    assert_eq!(text, ok(dir.path(), &["gen", "kneser", "5", "2"]));
    let j: Value = serde_json::from_str(&ok(dir.path(), &["gen", "kneser", "5", "2", "--json"])).unwrap();
    assert_eq!(j["edges"].as_array().unwrap().len(), 15);
    assert_eq!(j["labels"][0], "{1,2}");
}

#[test]
fn petersen_local_chromatic_certificate() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.dimacs", &["kneser", "5", "2"]);
    let out = ok(dir.path(), &["solve", "chi-local", "g.dimacs", "--json"]);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["schema"], 1);
    assert_eq!(j["value"], 3);
    assert_eq!(j["verified"], true);
    assert!(j.get("seconds").is_none());
    write(dir.path(), "c.json", &out);
    assert!(ok(dir.path(), &["verify", "c.json", "g.dimacs"]).starts_with("ok"));
}

#[test]
fn every_solve_witness_verifies_in_a_separate_process() {
    let dir = tempfile::tempdir().unwrap();
    let graphs: [(&str, &[&str]); 4] = [
        ("c5.dimacs", &["cycle", "5"]),
        ("k4.dimacs", &["complete", "4"]),
        ("s6.dimacs", &["schrijver", "6", "2"]),
        ("r.dimacs", &["random", "8", "0.4", "--seed", "3"]),
    ];
    for (name, family) in graphs {
        gen(dir.path(), name, family);
        for param in ["chi", "chi-local", "clique", "od", "od-local", "minrank"] {
            for field in ["2", "3"] {
                let out = ok(
                    dir.path(),
                    &["solve", param, name, "--field", field, "--max-nodes", "20000", "--json"],
                );
                write(dir.path(), "cert.json", &out);
                ok(dir.path(), &["verify", "cert.json", name]);
            }
        }
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.dimacs", &["cycle", "5"]);
    gen(dir.path(), "k.dimacs", &["complete", "5"]);
    let mut j: Value = serde_json::from_str(&ok(dir.path(), &["solve", "chi", "g.dimacs", "--json"])).unwrap();
    j["value"] = 2.into();
    write(dir.path(), "bad.json", &j.to_string());
    assert_eq!(code(dir.path(), &["verify", "bad.json", "g.dimacs"]), 1);

    let mut j: Value = serde_json::from_str(&ok(dir.path(), &["solve", "od-local", "g.dimacs", "--json"])).unwrap();
    j["witness"]["vectors"][1] = j["witness"]["vectors"][0].clone();
    write(dir.path(), "bad.json", &j.to_string());
    assert_eq!(code(dir.path(), &["verify", "bad.json", "g.dimacs"]), 1);

    let good = ok(dir.path(), &["solve", "chi-local", "g.dimacs", "--json"]);
    write(dir.path(), "good.json", &good);
    assert_eq!(code(dir.path(), &["verify", "good.json", "k.dimacs"]), 1);
}

#[test]
fn bare_representation_verifies() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.dimacs", &["cycle", "4"]);
    write(
        dir.path(),
        "rep.json",
        r#"{"field": 3, "dim": 2, "kind": "orthogonal", "vectors": [[1,0],[0,1],[1,0],[0,1]]}"#,
    );
    assert!(ok(dir.path(), &["verify", "rep.json", "g.dimacs"]).contains("locality 2"));
    write(
        dir.path(),
        "rep.json",
        r#"{"field": "Q", "dim": 2, "kind": "orthogonal", "vectors": [["1/2",0],[0,1],[1,0],[0,"-3"]]}"#,
    );
    ok(dir.path(), &["verify", "rep.json", "g.dimacs"]);
    write(
        dir.path(),
        "rep.json",
        r#"{"field": 3, "dim": 2, "kind": "orthogonal", "vectors": [[1,0],[1,1],[1,0],[0,1]]}"#,
    );
    assert_eq!(code(dir.path(), &["verify", "rep.json", "g.dimacs"]), 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "c5.dimacs", &["cycle", "5"]);
    assert_eq!(code(dir.path(), &["solve", "od", "c5.dimacs", "--max-dim", "1"]), 3);
    assert_eq!(code(dir.path(), &["frobnicate"]), 2);
    assert_eq!(code(dir.path(), &["solve", "chi", "missing.dimacs"]), 2);
    assert_eq!(code(dir.path(), &["solve", "od", "c5.dimacs", "--field", "4"]), 2);
    assert_eq!(code(dir.path(), &["gen", "kneser", "3", "2"]), 2);
    assert_eq!(code(dir.path(), &["--threads", "0", "gen", "cycle", "3"]), 2);
    write(dir.path(), "bad.dimacs", "p edge 2 1\ne 1 1\n");
    assert_eq!(code(dir.path(), &["solve", "chi", "bad.dimacs"]), 2);
    gen(dir.path(), "big.dimacs", &["kneser", "7", "2"]);
    assert_eq!(code(dir.path(), &["solve", "od-local", "big.dimacs"]), 3);
    assert_eq!(code(dir.path(), &["--help"]), 0);
}

#[test]
fn index_codes_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "p.dimacs", &["kneser", "5", "2"]);
    gen(dir.path(), "k.dimacs", &["complete", "6"]);
    for method in ["minrank", "local", "compress"] {
        for field in ["2", "5"] {
            let args = [
                "index-code",
                "p.dimacs",
                "--field",
                field,
                "--method",
                method,
                "--simulate",
                "40",
                "--json",
            ];
            let out = ok(dir.path(), &args);
            let j: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(j["simulation"]["failures"], 0);
            assert_eq!(j["length"], j["code"]["encode"].as_array().unwrap().len());
            write(dir.path(), "code.json", &out);
            ok(dir.path(), &["verify", "code.json", "p.dimacs"]);
            assert_eq!(out, ok(dir.path(), &args), "same seed, same output");
        }
        let j: Value = serde_json::from_str(&ok(
            dir.path(),
            &["index-code", "k.dimacs", "--method", method, "--json"],
        ))
        .unwrap();
        assert_eq!(j["length"], 1);
    }
}

#[test]
fn tampered_index_code_rejected() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "c5.dimacs", &["cycle", "5"]);
    let mut j: Value = serde_json::from_str(&ok(
        dir.path(),
        &["index-code", "c5.dimacs", "--simulate", "5", "--json"],
    ))
    .unwrap();
    let x = j["code"]["decode"][0][0].as_u64().unwrap();
    j["code"]["decode"][0][0] = (1 - x).into();
    write(dir.path(), "code.json", &j.to_string());
    assert_eq!(code(dir.path(), &["verify", "code.json", "c5.dimacs"]), 1);
}

#[test]
fn threads_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), "g.dimacs", &["schrijver", "7", "2"]);
    let a = ok(dir.path(), &["solve", "chi-local", "g.dimacs", "--json"]);
    let b = ok(
        dir.path(),
        &["--threads", "4", "solve", "chi-local", "g.dimacs", "--json"],
    );
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("command");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let t: Value = serde_json::from_str(&ok(dir.path(), &["--timing", "solve", "chi", "g.dimacs", "--json"])).unwrap();
    assert!(t["seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn reduction_colors_follow_satisfiability() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sat.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
    write(dir.path(), "unsat.cnf", "c x and not x\np cnf 1 2\n1 0\n-1 0\n");
    for (cnf, chi) in [("sat.cnf", 3), ("unsat.cnf", 4)] {
        ok(dir.path(), &["reduce", cnf, "-o", "g.dimacs", "--roles", "roles.json"]);
        let j: Value = serde_json::from_str(&ok(dir.path(), &["solve", "chi", "g.dimacs", "--json"])).unwrap();
        assert_eq!(j["value"], chi, "{cnf}");
        let roles: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("roles.json")).unwrap()).unwrap();
        assert_eq!(roles["roles"][0]["role"], "w");
        assert_eq!(roles["schema"], 1);
    }
    let gp = ok(dir.path(), &["reduce", "sat.cnf", "--stage", "Gprime"]);
    let g5 = ok(dir.path(), &["reduce", "sat.cnf", "--k", "5"]);
    let n = |s: &str| {
        s.lines()
            .next()
            .unwrap()
            .split(' ')
            .nth(2)
            .unwrap()
            .parse::<usize>()
            .unwrap()
    };
    assert_eq!(n(&g5), n(&gp) + 2);
    assert_eq!(code(dir.path(), &["reduce", "sat.cnf", "--stage", "G", "--k", "5"]), 2);
    assert_eq!(code(dir.path(), &["reduce", "sat.cnf", "--stage", "Gk", "--k", "3"]), 2);
    write(dir.path(), "taut.cnf", "p cnf 1 1\n1 -1 0\n");
    assert_eq!(code(dir.path(), &["reduce", "taut.cnf"]), 2);
}

#[test]
fn selftest_subset() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["selftest", "--only", "1", "--only", "12"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.contains("PASS")));
    let j: Value = serde_json::from_str(&ok(dir.path(), &["selftest", "--only", "7", "--json"])).unwrap();
    assert_eq!(j["criteria"][0]["passed"], true);
    assert_eq!(code(dir.path(), &["selftest", "--only", "13"]), 2);
}
