mod common;

use std::fs;

use common::*;

#[test]
fn every_invocation_exits_as_expected_and_matches_its_schemas() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    for (out, args, code) in invocations() {
        let mut full = vec!["--out", out];
        full.extend(args.iter().copied());
        assert_eq!(run(dir, &full), code, "{args:?}");
        let checked = validate_dir(&dir.join(out)).unwrap();
        assert!(checked >= 2, "{out}: only {checked} JSON artifacts");
    }
}

#[test]
fn inputs_match_their_schemas() {
    validate_json("family", K22).unwrap();
    validate_json("constructor-config", &relaxed_config(7)).unwrap();
    let g = bipcert::graph::named::petersen();
    validate_json("graph", &serde_json::to_string(&g).unwrap()).unwrap();
    assert!(validate_json("family", r#"{"forbidden":[]}"#).is_err());
}

#[test]
fn replay_reproduces_every_artifact() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    for (out, args, _) in invocations() {
        let mut full = vec!["--out", out];
        full.extend(args.iter().copied());
        run(dir, &full);
        replay_matches(dir, out).unwrap();
    }
}

#[test]
fn replay_needs_no_input_files() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    assert_eq!(run(dir, &["--out", "z", "zarankiewicz", "--m", "3", "--n", "3", "--family", "k22.json"]), 0);
    fs::remove_file(dir.join("k22.json")).unwrap();
    replay_matches(dir, "z").unwrap();
}

#[test]
fn tampered_manifest_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    run(dir, &["--out", "z", "zarankiewicz", "--m", "3", "--n", "3", "--family", "k22.json"]);
    let path = dir.join("z/manifest.json");
    let text = fs::read_to_string(&path).unwrap().replace("\"m\": 3", "\"m\": 2");
    fs::write(&path, text).unwrap();
    assert_eq!(run(dir, &["--out", "again", "replay", "z/manifest.json"]), 2);
}

#[test]
fn job_count_does_not_change_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    let args = ["zarankiewicz", "--m", "4", "--n", "5", "--family", "k22.json", "--sweep"];
    for (out, jobs) in [("one", "1"), ("four", "4")] {
        let mut full = vec!["--out", out, "--jobs", jobs];
        full.extend(args);
        assert_eq!(run(dir, &full), 0);
    }
    assert_eq!(snapshot(&dir.join("one")), snapshot(&dir.join("four")));
    for (out, jobs) in [("v1", "1"), ("v3", "3")] {
        assert_eq!(run(dir, &["--out", out, "--jobs", jobs, "verify-lemma", "2.5", "--trials", "30"]), 0);
    }
    assert_eq!(snapshot(&dir.join("v1")), snapshot(&dir.join("v3")));
}

#[test]
fn documented_examples() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    assert_eq!(run(dir, &["--out", "c", "constants", "--alpha", "1.5", "--beta", "1", "--rho", "1", "--delta", "1"]), 0);
    let c: serde_json::Value = serde_json::from_slice(&fs::read(dir.join("c/constants.json")).unwrap()).unwrap();
    assert_eq!(c["ell0"], 3);

    assert_eq!(run(dir, &["--out", "z", "zarankiewicz", "--m", "3", "--n", "3", "--family", "k22.json"]), 0);
    let table = fs::read_to_string(dir.join("z/z-table.csv")).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("m,n,family-hash,value,exact,witness-file"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!((row[3], row[4], row[5]), ("6", "true", "z-3-3.graph"));
    let w = bipcert::graph::read_graph(&fs::read_to_string(dir.join("z/z-3-3.graph")).unwrap()).unwrap();
    assert_eq!(w.edge_count(), 6);

    assert_eq!(run(dir, &["--out", "v", "verify-lemma", "2.4", "--trials", "100", "--seed", "1"]), 0);
    let v: serde_json::Value = serde_json::from_slice(&fs::read(dir.join("v/verify.json")).unwrap()).unwrap();
    assert_eq!((v["passed"].as_u64(), v["trials"].as_u64()), (Some(100), Some(100)));
}

#[test]
fn input_errors_exit_3_and_still_write_a_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    let cases: [&[&str]; 5] = [
        &["--out", "a", "constants", "--alpha", "3", "--beta", "1", "--rho", "1", "--delta", "1"],
        &["--out", "b", "zarankiewicz", "--m", "3", "--n", "3", "--family", "missing.json"],
        &["--out", "c", "verify-lemma", "9.9"],
        &["--out", "d", "reach", "--graph", "inc.graph", "--root", "99", "--ell-max", "2"],
        &["--out", "e", "zarankiewicz", "--m", "9", "--n", "9", "--family", "k22.json"],
    ];
    for args in cases {
        assert_eq!(run(dir, args), 3, "{args:?}");
        let out = dir.join(args[1]);
        validate_dir(&out).unwrap();
        let m: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(m["outcome"]["status"], "input_error");
    }
}

#[test]
fn extremal_cache_is_used_and_invisible_in_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    prepare_inputs(dir);
    let cache = dir.join("cache");
    let args = ["zarankiewicz", "--m", "4", "--n", "4", "--family", "k22.json"];
    let env = [("EXTREMAL_CACHE_DIR", cache.as_path())];
    let run_to = |out: &str| {
        let mut full = vec!["--out", out];
        full.extend(args);
        assert_eq!(run_env(dir, &full, &env), 0);
    };
    run_to("cold");
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    run_to("warm");
    assert_eq!(snapshot(&dir.join("cold")), snapshot(&dir.join("warm")));

    // a corrupted entry is ignored and rewritten
    let entry = entries[0].as_ref().unwrap().path();
    fs::write(&entry, "{}").unwrap();
    run_to("repaired");
    assert_eq!(snapshot(&dir.join("cold")), snapshot(&dir.join("repaired")));
    assert_ne!(fs::read_to_string(&entry).unwrap(), "{}");
}
