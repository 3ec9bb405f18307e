use std::path::PathBuf;
use std::process::Command;

use raagfp::cli::{CoabelianResult, FgResult, GogResult, TableResult};
use raagfp::fpcheck::{FpLevel, FpnReport};
use raagfp::report::AnalysisReport;
use raagfp::verify::VerifyReport;

fn corpus(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn raagfp(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_raagfp")).args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn json<T: serde::de::DeserializeOwned>(stdout: &str) -> AnalysisReport<T> {
    serde_json::from_str(stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"))
}

#[test]
fn fg_exit_codes() {
    let (out, _, code) = raagfp(&["fg", &corpus("graphs/c4.json"), &corpus("characters/c4.ones.json")]);
    assert_eq!(code, 0);
    let r: AnalysisReport<FgResult> = json(&out);
    assert!(r.result.fg && r.result.connected && r.result.dominant);
    assert_eq!(r.input.graph_sha256.as_ref().map(String::len), Some(64));

    let (out, _, code) = raagfp(&["fg", &corpus("graphs/p3.json"), &corpus("characters/p3.ends.json")]);
    assert_eq!(code, 1);
    let r: AnalysisReport<FgResult> = json(&out);
    assert!(!r.result.connected && r.result.dominant);

    let (out, err, code) = raagfp(&["fg", &corpus("graphs/c4.json"), &corpus("characters/c4.zero.json")]);
    assert_eq!(code, 3);
    assert!(out.is_empty() && err.contains("epimorphism"));
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_graph = dir.path().join("g.json");
    std::fs::write(&bad_graph, r#"{"vertices":["a","a"],"edges":[]}"#).unwrap();
    let (_, err, code) = raagfp(&["fg", bad_graph.to_str().unwrap(), &corpus("characters/c4.ones.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("duplicate"));

    let extra = dir.path().join("chi.json");
    std::fs::write(&extra, r#"{"p":2,"chi":{"v1":1,"v2":1,"v3":1,"v4":1,"v9":1}}"#).unwrap();
    let (_, err, code) = raagfp(&["fg", &corpus("graphs/c4.json"), extra.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("v9"));

    let (_, _, code) = raagfp(&["fg", &corpus("graphs/c4.json"), &corpus("characters/c4.ones.json"), "--p", "4"]);
    assert_eq!(code, 2);
    let (_, _, code) = raagfp(&["fg", "/nonexistent.json", &corpus("characters/c4.ones.json")]);
    assert_eq!(code, 2);
    let (_, _, code) = raagfp(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn fpn_examples() {
    let (out, _, code) = raagfp(&["fpn", &corpus("graphs/c4.json"), &corpus("characters/c4.ones.json")]);
    let r: AnalysisReport<FpnReport> = json(&out);
    assert_eq!(r.result.max_fp, FpLevel::Finite(1));
    assert!(r.result.routes_agree && r.result.decomposition.pass);
    assert_eq!(code, 1);

    for (g, c) in [("k3", "k3.edge"), ("p3", "p3.middle")] {
        let (out, _, code) = raagfp(&["fpn", &corpus(&format!("graphs/{g}.json")), &corpus(&format!("characters/{c}.json"))]);
        let r: AnalysisReport<FpnReport> = json(&out);
        assert_eq!(r.result.max_fp, FpLevel::Infinite, "{g}");
        assert_eq!(code, 0);
    }
}

#[test]
fn scaled_character_warns() {
    let (out, _, _) = raagfp(&["fpn", &corpus("graphs/c4.json"), &corpus("characters/c4.scaled.json")]);
    let r: AnalysisReport<FpnReport> = json(&out);
    assert!(r.result.normalization.rescaled);
    assert_eq!(r.result.normalization.normalized, vec![1, 3, 1, -2]);
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn table_examples() {
    let (out, _, code) = raagfp(&["table", &corpus("graphs/c4.json")]);
    assert_eq!(code, 0);
    let r: AnalysisReport<TableResult> = json(&out);
    assert_eq!(r.result.rows.len(), 15);
    let full = r.result.rows.last().unwrap();
    assert_eq!(full.support.len(), 4);
    assert!(full.fg);
    assert_eq!(full.max_fp, FpLevel::Finite(1));

    let (out, _, _) = raagfp(&["table", &corpus("graphs/k2.json")]);
    let r: AnalysisReport<TableResult> = json(&out);
    assert_eq!(r.result.rows.len(), 3);
    assert!(r.result.rows.iter().all(|row| row.max_fp == FpLevel::Infinite));

    let (out, _, _) = raagfp(&["table", &corpus("graphs/edgeless2.json")]);
    let r: AnalysisReport<TableResult> = json(&out);
    assert!(r.result.rows.iter().all(|row| !row.fg));

    let (_, err, code) = raagfp(&["table", &corpus("graphs/c8.json"), "--cap", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"));
}

#[test]
fn coabelian_examples() {
    let (out, _, code) = raagfp(&["coabelian", &corpus("graphs/edgeless2.json"), &corpus("matrices/edgeless2.identity.json")]);
    assert_eq!(code, 1);
    let r: AnalysisReport<CoabelianResult> = json(&out);
    assert!(!r.result.fg);
    assert_eq!(r.result.fg_witness, Some(vec![]));
    assert_eq!(r.result.fpn.per_pattern.len(), 3);

    let (out, _, code) = raagfp(&["coabelian", &corpus("graphs/c4.json"), &corpus("matrices/c4.ones.json")]);
    let r: AnalysisReport<CoabelianResult> = json(&out);
    assert!(r.result.fg && r.result.fullness.full);
    assert_eq!(r.result.fullness.marker.as_deref(), Some("G/N is finite-by-abelian"));
    assert_eq!(code, 1, "C_4 kernel is not FP_2");

    let (_, _, code) = raagfp(&["coabelian", &corpus("graphs/k3.json"), &corpus("matrices/k3.zero.json")]);
    assert_eq!(code, 3);
    let (_, _, code) = raagfp(&["coabelian", &corpus("graphs/c4.json"), &corpus("matrices/k2.sum.json")]);
    assert_eq!(code, 2);
}

#[test]
fn gog_examples() {
    let (out, _, code) = raagfp(&["gog", &corpus("gog/edge_4_2_6.json"), "--index", "12"]);
    assert_eq!(code, 0);
    let r: AnalysisReport<GogResult> = json(&out);
    assert_eq!(r.result.euler.chi, "-1/12");
    assert_eq!(r.result.bounds.rank, 2);
    assert_eq!(r.result.bounds.edges[0].holds_b, Some(true));

    let (out, _, _) = raagfp(&["gog", &corpus("gog/dihedral.json"), "--index", "2"]);
    let r: AnalysisReport<GogResult> = json(&out);
    assert!(r.result.dihedral && r.result.bounds.bound_b_skipped.is_some());
    assert_eq!(r.result.bounds.rank, 1);

    let (out, _, _) = raagfp(&["gog", &corpus("gog/two_loops_trivial.json")]);
    let r: AnalysisReport<GogResult> = json(&out);
    assert_eq!(r.result.bounds.rank, 2);

    let (_, _, code) = raagfp(&["gog", &corpus("gog/edge_4_2_6.json"), "--index", "5"]);
    assert_eq!(code, 3);
}

#[test]
fn verify_smoke_and_negative_control() {
    let (out, _, code) = raagfp(&["verify", "--trials", "10", "--max-vertices", "5", "--jobs", "2"]);
    assert_eq!(code, 0);
    let r: AnalysisReport<VerifyReport> = json(&out);
    assert!(r.result.pass);

    let (out, _, code) = raagfp(&["verify", "--trials", "4", "--max-vertices", "4", "--inject-boundary-fault", "--format", "text"]);
    assert_eq!(code, 1);
    assert!(out.contains("minimal failing instance (d_squared)"));
    assert!(out.trim_end().ends_with("FAIL"));
}

#[test]
fn reports_are_byte_deterministic() {
    let runs = [
        vec!["fpn".to_string(), corpus("graphs/octahedron.json"), corpus("characters/octahedron.half.json")],
        vec!["table".to_string(), corpus("graphs/c5.json"), "--p".into(), "3".into()],
        vec!["verify".to_string(), "--trials".into(), "8".into(), "--max-vertices".into(), "5".into(), "--seed".into(), "9".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, _, _) = raagfp(&args);
        let mut with_jobs = args.clone();
        with_jobs.extend(["--jobs", "1"]);
        let (b, _, _) = raagfp(&with_jobs);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn json_round_trip() {
    let (out, _, _) = raagfp(&["fpn", &corpus("graphs/join_p3_p3.json"), &corpus("characters/join_p3_p3.left.json")]);
    let r: AnalysisReport<FpnReport> = json(&out);
    assert_eq!(r.to_json(), out.trim_end());

    let (out, _, _) = raagfp(&["coabelian", &corpus("graphs/c4.json"), &corpus("matrices/c4.rank2.json")]);
    let r: AnalysisReport<CoabelianResult> = json(&out);
    assert_eq!(r.to_json(), out.trim_end());
}

#[test]
fn text_format_is_aligned() {
    let (out, _, _) = raagfp(&["fg", &corpus("graphs/c4.json"), &corpus("characters/c4.ones.json"), "--format", "text"]);
    assert_eq!(out, "support:   {v1,v2,v3,v4}\nconnected: true\ndominant:  true\nfg:        true\n");
}

#[test]
fn whole_corpus_is_consistent() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", "characters"].iter().collect();
    let mut checked = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let stem = path.file_name().unwrap().to_str().unwrap();
        let graph = stem.split('.').next().unwrap();
        let (out, _, code) = raagfp(&["fpn", &corpus(&format!("graphs/{graph}.json")), path.to_str().unwrap()]);
        if stem.contains("zero") {
            assert_eq!(code, 3);
            continue;
        }
        assert!(code == 0 || code == 1, "{stem}: exit {code}");
        let r: AnalysisReport<FpnReport> = json(&out);
        assert!(r.result.routes_agree && r.result.decomposition.pass, "{stem}");
        checked += 1;
    }
    assert!(checked >= 30);
}
