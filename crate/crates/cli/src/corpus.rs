use crate::{load, Failure};
use anyhow::{anyhow, Context};
use psw_core::analysis::{InvariantBundle, Manifold};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub fn default_dir() -> PathBuf {
    let local = PathBuf::from("corpus");
    if local.is_dir() {
        local
    } else {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
    }
}

/// Complex files of the corpus, sorted by name.
fn entries(dir: &Path) -> anyhow::Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading corpus directory {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            out.push((stem, path));
        }
    }
    out.sort();
    Ok(out)
}

fn golden_path(dir: &Path, name: &str) -> PathBuf {
    dir.join("golden").join(format!("{name}.json"))
}

fn compute(path: &Path) -> Result<Value, Failure> {
    let man = Manifold::new(load(path)?);
    let bundle = InvariantBundle::compute(&man)?;
    Ok(serde_json::to_value(bundle).map_err(anyhow::Error::from)?)
}

/// Computes every entry (in parallel); order of the result follows `entries`.
fn compute_all(list: &[(String, PathBuf)]) -> Result<Vec<Value>, Failure> {
    list.par_iter().map(|(_, p)| compute(p)).collect()
}

fn pretty(v: &Value) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn bless(dir: &Path) -> Result<(), Failure> {
    let list = entries(dir)?;
    let values = compute_all(&list)?;
    std::fs::create_dir_all(dir.join("golden")).map_err(anyhow::Error::from)?;
    for ((name, _), v) in list.iter().zip(&values) {
        std::fs::write(golden_path(dir, name), pretty(v)?).map_err(anyhow::Error::from)?;
        println!("wrote {}", golden_path(dir, name).display());
    }
    Ok(())
}

/// Top-level keys whose values differ, with both sides.
fn diff(expected: &Value, actual: &Value) -> Vec<String> {
    let (Value::Object(e), Value::Object(a)) = (expected, actual) else {
        return vec!["golden file is not a JSON object".into()];
    };
    let mut keys: Vec<&String> = e.keys().chain(a.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let (x, y) = (e.get(k), a.get(k));
            (x != y).then(|| {
                let show = |v: Option<&Value>| v.map_or("<missing>".to_string(), Value::to_string);
                format!("{k}: expected {}, got {}", show(x), show(y))
            })
        })
        .collect()
}

pub fn check(dir: &Path) -> Result<(), Failure> {
    let list = entries(dir)?;
    if list.is_empty() {
        return Err(Failure::Input(anyhow!("no complexes found in {}", dir.display())));
    }
    let golden_dir = dir.join("golden");
    if golden_dir.is_dir() {
        for entry in std::fs::read_dir(&golden_dir).map_err(anyhow::Error::from)? {
            let path = entry.map_err(anyhow::Error::from)?.path();
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            if path.extension().is_some_and(|e| e == "json") && !list.iter().any(|(n, _)| n == stem) {
                return Err(Failure::Input(anyhow!(
                    "golden file {} has no corpus complex {}",
                    path.display(),
                    dir.join(format!("{stem}.json")).display()
                )));
            }
        }
    }
    let values = compute_all(&list)?;
    let mut hasher = Sha256::new();
    let mut results = Vec::new();
    let mut failed = 0;
    for ((name, _), actual) in list.iter().zip(&values) {
        hasher.update(pretty(actual)?.as_bytes());
        let mismatches = match std::fs::read_to_string(golden_path(dir, name)) {
            Ok(text) => match serde_json::from_str::<Value>(&text) {
                Ok(expected) => diff(&expected, actual),
                Err(e) => vec![format!("unreadable golden file: {e}")],
            },
            Err(_) => vec!["missing golden file".to_string()],
        };
        let status = if mismatches.is_empty() { "pass" } else { "fail" };
        if !mismatches.is_empty() {
            failed += 1;
        }
        let mut entry = json!({ "name": name, "status": status });
        if !mismatches.is_empty() {
            entry["mismatches"] = json!(mismatches);
        }
        results.push(entry);
    }
    let summary = json!({
        "manifolds": results,
        "passed": list.len() - failed,
        "failed": failed,
        "sha256": hex::encode(hasher.finalize()),
    });
    println!("{}", serde_json::to_string_pretty(&summary).map_err(anyhow::Error::from)?);
    if failed > 0 {
        return Err(Failure::Mismatch(format!("{failed} corpus manifold(s) differ from their golden files")));
    }
    Ok(())
}
