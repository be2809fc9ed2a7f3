use std::path::PathBuf;

use mds_selfdual::cli::run;
use mds_selfdual::grs::CodeRecord;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mds-selfdual").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mds-selfdual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_th1_gf81() {
    let (code, out, _) = cli(&["construct", "--theorem", "th1", "--r", "9", "--m", "2", "--e", "1", "--t", "2"]);
    assert_eq!(code, 0);
    let rec = CodeRecord::from_json(&out).unwrap();
    assert_eq!((rec.a.len(), rec.k, rec.field.p, rec.field.m), (36, 18, 3, 4));
    assert_eq!(rec.provenance.theorem, "th1");
}

#[test]
fn construct_th4_gf1331() {
    let (code, out, _) = cli(&["construct", "--theorem", "th4", "--r", "11", "--m", "3", "--e", "2", "--t", "2"]);
    assert_eq!(code, 0);
    let rec = CodeRecord::from_json(&out).unwrap();
    assert_eq!((rec.a.len() + 1, rec.k, rec.extended), (364, 182, true));
}

#[test]
fn hypothesis_failure_names_condition() {
    let (code, out, err) = cli(&["construct", "--theorem", "th2", "--p", "5", "--m", "1", "--e", "0", "--t", "3"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("eta(3) = -1"), "{err}");
    let (code, _, _) = cli(&["construct", "th1", "r=15", "m=1", "e=0", "t=1"]);
    assert_eq!(code, 2);
}

#[test]
fn round_trip_and_tampering() {
    let path = scratch("gf13.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = cli(&["construct", "th2", "p=13", "m=1", "e=0", "t=3", "--out", p]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&["verify", p]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["self_dual"], true);
    assert_eq!(report["min_distance"], 3);

    let mut rec = CodeRecord::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    rec.v[1] = if rec.v[1] == 2 { 3 } else { 2 };
    let bad = scratch("gf13-bad.json");
    std::fs::write(&bad, serde_json::to_string(&rec).unwrap()).unwrap();
    let (code, out, _) = cli(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code, 4, "{out}");

    let junk = scratch("junk.json");
    std::fs::write(&junk, "{\"field\": 3}").unwrap();
    assert_eq!(cli(&["verify", junk.to_str().unwrap()]).0, 1);
}

#[test]
fn verify_gf169_th3_sampled() {
    let path = scratch("th3.json");
    let p = path.to_str().unwrap();
    assert_eq!(cli(&["construct", "th3", "p=13", "m=2", "e=1", "t=2", "--out", p]).0, 0);
    let (code, out, _) = cli(&["--format", "text", "verify", p, "--mds", "sampled"]);
    assert_eq!(code, 0);
    assert!(out.contains("self_dual true") && out.contains("mds true (sampled)"), "{out}");
}

#[test]
fn every_theorem_round_trips() {
    let cases: &[&[&str]] = &[
        &["th1", "r=13", "m=1", "e=0", "t=3"],
        &["th2", "p=13", "m=1", "e=0", "t=3"],
        &["th3", "p=13", "m=2", "e=0", "t=2"],
        &["th4", "r=13", "m=1", "e=0", "t=4"],
        &["th8", "r=5", "s=1", "m=3", "e=0", "t=2"],
        &["th9", "r=5", "s=1", "m=3", "e=0", "t=1"],
        &["th10", "r=5", "s=1", "m=3", "e=0", "t=1"],
        &["cor3", "r=5", "s=1", "ms=1,3", "e=0", "t=1"],
        &["th12", "r=5", "e=6", "f=4", "s=2", "t=3"],
        &["th13", "r=5", "e=8", "f=3", "s=3", "t=3"],
        &["large_q", "q=49", "n=4"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = scratch(&format!("rt{i}.json"));
        let p = path.to_str().unwrap();
        let mut args = vec!["construct"];
        args.extend_from_slice(case);
        args.extend_from_slice(&["--out", p]);
        let (code, _, err) = cli(&args);
        assert_eq!(code, 0, "{case:?}: {err}");
        let (code, out, _) = cli(&["verify", p]);
        assert_eq!(code, 0, "{case:?}: {out}");
    }
}

#[test]
fn matrix_output() {
    let path = scratch("g.txt");
    let (code, _, _) = cli(&["construct", "th2", "p=13", "m=1", "e=0", "t=3", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert_eq!(text.lines().next().unwrap().split_whitespace().count(), 4);
}

#[test]
fn catalog_examples() {
    let (code, out, _) = cli(&["catalog", "--q", "81", "--max-n", "100"]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let n36 = rows.iter().find(|r| r["n"] == 36).unwrap();
    assert_eq!(n36["status"], "constructed");
    assert!(n36["provenance"].as_array().unwrap().iter().any(|p| p["theorem"] == "th1"));

    let (code, out, _) = cli(&["--format", "text", "catalog", "--q", "7", "--max-n", "10"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "7,6,nonexistent,"), "{out}");

    let (_, out, _) = cli(&["catalog", "--q", "25", "--max-n", "12"]);
    let four: serde_json::Value = serde_json::from_str(out.lines().find(|l| l.contains("\"n\":4,")).unwrap()).unwrap();
    let ids: Vec<&str> = four["provenance"].as_array().unwrap().iter().map(|p| p["theorem"].as_str().unwrap()).collect();
    assert!(ids.contains(&"th12") && ids.contains(&"th13"), "{ids:?}");
}

#[test]
fn catalog_errors() {
    assert_eq!(cli(&["catalog", "--q", "15"]).0, 2);
    assert_eq!(cli(&["--table-limit", "100", "catalog", "--q", "125"]).0, 6);
    assert_eq!(cli(&["catalog"]).0, 1);
}

#[test]
fn selftest_runs() {
    let (code, out, _) = cli(&["selftest", "--max-q", "13"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    let (code, _, err) = cli(&["selftest", "--max-q", "13", "--corrupt-zech", "9"]);
    assert_eq!(code, 7);
    assert!(err.contains("GF(9)"), "{err}");
}

#[test]
fn limits_and_config() {
    let (code, _, _) = cli(&["--length-limit", "100", "construct", "th4", "r=11", "m=3", "e=2", "t=2"]);
    assert_eq!(code, 6);
    let cfg = scratch("cfg.txt");
    std::fs::write(&cfg, "format = text\n").unwrap();
    let (code, out, _) = cli(&["--config", cfg.to_str().unwrap(), "construct", "th2", "p=13", "m=1", "e=0", "t=3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("theorem th2"), "{out}");
    std::fs::write(&cfg, "sample_count = -3\n").unwrap();
    assert_eq!(cli(&["--config", cfg.to_str().unwrap(), "selftest", "--max-q", "3"]).0, 1);
}

#[test]
fn deterministic_output() {
    for args in [
        &["construct", "th1", "r=9", "m=2", "e=1", "t=2"][..],
        &["catalog", "--q", "49"][..],
        &["selftest", "--max-q", "27"][..],
    ] {
        assert_eq!(cli(args), cli(args));
    }
}
