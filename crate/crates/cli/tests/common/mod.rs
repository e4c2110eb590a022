#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const BIN: &str = env!("CARGO_BIN_EXE_bipcert");

pub fn schemas_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

/// Runs the binary in `cwd` and returns its exit code.
pub fn run(cwd: &Path, args: &[&str]) -> i32 {
    let out = Command::new(BIN).current_dir(cwd).args(args).output().expect("binary runs");
    out.status.code().expect("exit code")
}

pub fn run_env(cwd: &Path, args: &[&str], env: &[(&str, &Path)]) -> i32 {
    let mut c = Command::new(BIN);
    c.current_dir(cwd).args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs").status.code().expect("exit code")
}

/// File name to bytes for every file directly in `dir`.
pub fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .expect("output dir")
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

pub fn schema_for(artifact: &str) -> Option<&'static str> {
    Some(match artifact {
        "manifest.json" => "manifest",
        "constants.json" => "constants",
        "zarankiewicz.json" | "turan.json" => "extremal-records",
        "check-free.json" => "check-free",
        "bipartize.json" => "bipartize",
        "certificate.json" => "certificate",
        "c2l-reach.json" => "c2l-reach",
        "ball.json" => "ball",
        "outcome.json" => "odd-cycle-outcome",
        "peel.json" => "peel",
        "construct.json" => "construct",
        "spectrum.json" => "spectrum",
        "verify.json" => "verify",
        _ => return None,
    })
}

pub fn validate_json(schema: &str, text: &str) -> Result<(), String> {
    let path = schemas_dir().join(format!("{schema}.schema.json"));
    let s: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&s).map_err(|e| format!("{schema}: {e}"))?;
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(format!("{schema}: {}", errors.join("; ")))
    }
}

/// Validates every JSON artifact in `dir` that has a schema; returns how many were checked.
pub fn validate_dir(dir: &Path) -> Result<usize, String> {
    let mut checked = 0;
    for (name, bytes) in snapshot(dir) {
        if let Some(schema) = schema_for(&name) {
            validate_json(schema, std::str::from_utf8(&bytes).unwrap()).map_err(|e| format!("{name}: {e}"))?;
            checked += 1;
        } else if name.ends_with(".json") {
            return Err(format!("{name} has no schema"));
        }
    }
    Ok(checked)
}

/// Replays `dir/manifest.json` into a fresh directory and compares every file.
pub fn replay_matches(cwd: &Path, dir: &str) -> Result<(), String> {
    let again = format!("{dir}-replay");
    let manifest = format!("{dir}/manifest.json");
    let code = run(cwd, &["--out", &again, "replay", &manifest]);
    let a = snapshot(&cwd.join(dir));
    let b = snapshot(&cwd.join(&again));
    if a != b {
        let diff: Vec<&String> = a
            .keys()
            .chain(b.keys())
            .filter(|k| a.get(*k) != b.get(*k))
            .collect();
        return Err(format!("{dir}: replay differs in {diff:?} (exit {code})"));
    }
    let recorded: serde_json::Value = serde_json::from_slice(&a["manifest.json"]).unwrap();
    let expected = recorded["outcome"]["exit_code"].as_i64().unwrap() as i32;
    if code != expected {
        return Err(format!("{dir}: replay exit {code}, recorded {expected}"));
    }
    Ok(())
}

pub const K22: &str = r#"{"forbidden":[{"type":"complete_bipartite","s":2,"t":2}]}"#;

/// Relaxed general-mode config used for the projective-plane instances.
pub fn relaxed_config(k: usize) -> String {
    format!(
        r#"{{"k": {k}, "mode": {{"kind": "general", "params": {{"alpha": 1.5, "beta": 1.0, "rho": 1.0, "big_c": 1.0, "rho0": 0.1}}, "delta": 0.5}},
 "enforce_k0": false, "enforce_min_degree": false, "split_retries": 5000, "knobs": {{"split_fraction": 0.15}}}}"#
    )
}

/// Writes the text file `name` under `dir`.
pub fn put(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

/// Every seeded or input-driven invocation the reproducibility checks cover,
/// as (output dir, arguments, expected exit code).
pub fn invocations() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    vec![
        ("constants", vec!["constants", "--alpha", "1.5", "--beta", "1", "--rho", "1", "--delta", "1"], 0),
        ("constants-c2l", vec!["constants", "--ell", "2", "--delta", "1"], 0),
        ("z", vec!["zarankiewicz", "--m", "3", "--n", "3", "--family", "k22.json"], 0),
        ("z-sweep", vec!["zarankiewicz", "--m", "3", "--n", "4", "--family", "k22.json", "--sweep"], 0),
        (
            "z-heur",
            vec!["zarankiewicz", "--m", "5", "--n", "6", "--family", "k22.json", "--heuristic", "--seed", "4"],
            0,
        ),
        ("ex", vec!["turan", "--n", "7", "--family", "k22.json", "--sweep"], 0),
        ("inc", vec!["construct", "incidence", "--q", "3"], 0),
        ("pol", vec!["construct", "polarity", "--q", "4"], 0),
        ("theta", vec!["construct", "theta-free", "--m", "12", "--n", "12", "--t", "2", "--ell", "2", "--seed", "7"], 0),
        ("mindeg", vec!["construct", "mindeg", "--n", "30", "--d", "4", "--seed", "3"], 0),
        ("free", vec!["check-free", "--graph", "inc.graph", "--family", "k22.json"], 0),
        ("bip", vec!["bipartize", "--graph", "odd.graph"], 0),
        ("exp", vec!["expansion", "--graph", "inc.graph", "--root", "0", "--delta", "0.5", "--alpha", "1.5", "--beta", "1", "--rho", "1"], 0),
        ("exp-fail", vec!["expansion", "--graph", "inc.graph", "--root", "0", "--delta", "0.5", "--alpha", "1.5", "--beta", "1", "--rho", "0.01"], 2),
        ("reach", vec!["reach", "--graph", "inc.graph", "--root", "0", "--ell-max", "3"], 0),
        ("c2l", vec!["c2l-reach", "--graph", "inc.graph", "--root", "0", "--ell", "2", "--d", "4", "--seed", "5", "--ball"], 0),
        ("cycle", vec!["find-odd-cycle", "--graph", "odd.graph", "--config", "cfg7.json", "--seed", "1"], 0),
        ("cycle-fail", vec!["find-odd-cycle", "--graph", "odd.graph", "--config", "cfg7.json", "--seed", "0"], 2),
        ("cycle-bip", vec!["find-odd-cycle", "--graph", "inc.graph", "--config", "cfg7.json"], 1),
        ("peel", vec!["peel", "--graph", "odd.graph", "--delta", "0.5", "--alpha", "1.5"], 0),
        ("spec", vec!["spectrum", "--graph", "inc.graph", "--max-len", "14"], 0),
        ("verify", vec!["verify-lemma", "2.4", "--trials", "20", "--seed", "1"], 0),
    ]
}

/// Writes the shared inputs: the family, the incidence graph of PG(2,3), the same
/// graph plus one same-side edge, and a k = 7 config.
pub fn prepare_inputs(dir: &Path) {
    put(dir, "k22.json", K22);
    put(dir, "cfg7.json", &relaxed_config(7));
    let g = bipcert::generators::incidence_graph(bipcert::generators::PrimePower::new(3).unwrap()).unwrap();
    put(dir, "inc.graph", &bipcert::graph::write_graph(&g));
    let mut h = g.clone();
    h.clear_parts();
    h.add_edge(0, 1).unwrap();
    put(dir, "odd.graph", &bipcert::graph::write_graph(&h));
}
