use psw_core::analysis::Manifold;
use psw_core::chains::Chain;
use psw_core::homology::HomologyError;
use serde_json::{json, Value};
use std::fmt::Write;

/// Nonzero coefficients of a chain as `[[labels...], coefficient]` pairs.
fn chain_json(man: &Manifold, c: &Chain) -> Value {
    let k = man.complex();
    let table = k.skeleton(c.degree);
    let terms: Vec<Value> = c
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            let labels: Vec<i64> = table.get(i).iter().map(|&v| k.labels()[v as usize]).collect();
            json!([labels, x])
        })
        .collect();
    Value::Array(terms)
}

pub fn generators(man: &Manifold) -> Result<Value, HomologyError> {
    let h = man.integral()?;
    let groups: Vec<Value> = h
        .groups()
        .iter()
        .map(|g| {
            json!({
                "degree": g.degree,
                "free": g.free_generators.iter().map(|c| chain_json(man, c)).collect::<Vec<_>>(),
                "torsion": g.torsion_generators.iter()
                    .map(|(c, t)| json!({"order": t, "cycle": chain_json(man, c)}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Value::Array(groups))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One `key: value` line per field; nested objects are indented.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_object(&mut out, v, 0);
    out
}

fn write_object(out: &mut String, v: &Value, depth: usize) {
    let Value::Object(map) = v else {
        let _ = writeln!(out, "{}{}", "  ".repeat(depth), inline(v));
        return;
    };
    for (key, value) in map {
        match value {
            Value::Object(_) => {
                let _ = writeln!(out, "{}{key}:", "  ".repeat(depth));
                write_object(out, value, depth + 1);
            }
            _ => {
                let _ = writeln!(out, "{}{key}: {}", "  ".repeat(depth), inline(value));
            }
        }
    }
}
