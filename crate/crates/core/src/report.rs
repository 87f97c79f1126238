//! Canonical JSON and plain-text rendering of command results.
//!
//! Canonical JSON has sorted keys, two-space indentation, integers printed as
//! integers and every float printed with 17 significant digits, so parsing the
//! output and emitting it again reproduces it byte for byte.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::correlations::IndependenceReport;
use crate::theorem::TheoremReport;

pub const SCHEMA_VERSION: u64 = 1;

/// Exact backends report integral values (in particular zero residuals) as
/// JSON integers; everything else is a float.
pub fn number(x: f64, exact: bool) -> Value {
    if exact && x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
        Value::from(x as i64)
    } else {
        float(x)
    }
}

/// Non-finite floats become `null`.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_scalar(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else {
                out.push_str(&format_float(n.as_f64().expect("finite JSON number")));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(_) | Value::Object(_) => unreachable!("not a scalar"),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*key], depth + 1);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => write_scalar(out, scalar),
    }
}

/// Canonical serialization, newline terminated.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.as_i64().is_none() && n.as_u64().is_none() => {
            let x = n.as_f64().expect("finite");
            if x == 0.0 || (1e-3..1e6).contains(&x.abs()) {
                format!("{x}")
            } else {
                format!("{x:.3e}")
            }
        }
        Value::String(s) => s.clone(),
        Value::Null => "n/a".to_string(),
        other => {
            let mut s = String::new();
            write_scalar(&mut s, other);
            s
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render_text(out: &mut String, v: &Value, depth: usize) {
    let indent = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let width = keys.iter().map(|k| k.len()).max().unwrap_or(0);
            for key in keys {
                let item = &map[key];
                if is_scalar(item) {
                    writeln!(out, "{indent}{key:<width$}  {}", render_scalar(item)).unwrap();
                } else if matches!(item, Value::Array(a) if a.iter().all(is_scalar)) {
                    let parts: Vec<String> = item.as_array().unwrap().iter().map(render_scalar).collect();
                    writeln!(out, "{indent}{key:<width$}  [{}]", parts.join(", ")).unwrap();
                } else {
                    writeln!(out, "{indent}{key}:").unwrap();
                    render_text(out, item, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    writeln!(out, "{indent}- {}", render_scalar(item)).unwrap();
                } else {
                    writeln!(out, "{indent}-").unwrap();
                    render_text(out, item, depth + 1);
                }
            }
        }
        scalar => writeln!(out, "{indent}{}", render_scalar(scalar)).unwrap(),
    }
}

/// Human-readable rendering: a headline, then the report as an indented table.
pub fn text(headline: &str, v: &Value) -> String {
    let mut out = format!("{headline}\n");
    render_text(&mut out, v, 1);
    out
}

/// Wraps a command body with the fields every report carries.
pub fn envelope(command: &str, backend: &str, body: Map<String, Value>) -> Value {
    let mut map = body;
    map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    map.insert("command".into(), Value::from(command));
    map.insert("backend".into(), Value::from(backend));
    Value::Object(map)
}

pub fn theorem_json(r: &TheoremReport) -> Value {
    let exact = r.backend == "exact";
    let n = |x: f64| number(x, exact);
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| serde_json::json!({ "name": c.name, "value": n(c.value), "passed": c.passed }))
        .collect();
    let spectrum: Vec<Value> = r
        .spectrum
        .iter()
        .map(|&(v, m)| serde_json::json!({ "eigenvalue": n(v), "multiplicity": m }))
        .collect();
    serde_json::json!({
        "directions": r.directions,
        "commutator_gap": n(r.commutator_gap),
        "casimir_gap": n(r.casimir_gap),
        "anticommutator_residual": n(r.anticommutator_residual),
        "contraction_gap": n(r.contraction_gap),
        "contraction": {
            "lhs": n(r.contraction.lhs),
            "rhs": n(r.contraction.rhs),
            "rhs_six": n(r.contraction.rhs_six),
        },
        "spectrum_gap": n(r.spectrum_gap),
        "projector_gap": n(r.projector_gap),
        "elimination_gap": n(r.elimination_gap),
        "singlet_annihilation_gap": n(r.singlet_annihilation_gap),
        "kernel_dimension": r.kernel_dimension,
        "singlet_overlap": n(r.singlet_overlap),
        "spectrum": spectrum,
        "subspace_dims": r.subspace_dims.iter().map(|&d| n(d)).collect::<Vec<_>>(),
        "checks": checks,
        "failing": r.failing,
        "verdict": if r.passed() { "pass" } else { "fail" },
    })
}

pub fn independence_json(r: &IndependenceReport, exact: bool) -> Value {
    let n = |x: f64| number(x, exact);
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|&(name, value, passed)| serde_json::json!({ "name": name, "value": n(value), "passed": passed }))
        .collect();
    serde_json::json!({
        "product_states": r.product_states,
        "factorization_gap": n(r.factorization_gap),
        "pair_purity_gap": n(r.pair_purity_gap),
        "statistics_gap": n(r.statistics_gap),
        "entangled_gap": float(r.entangled_gap),
        "entangled_pair_purity": float(r.entangled_pair_purity),
        "twin_yes_gap": n(r.twin_yes_gap),
        "twin_discord": n(r.twin_discord),
        "agreement": float(r.agreement),
        "agreement_gap": n(r.agreement_gap),
        "agreement_search": r.agreement_search.map(float).unwrap_or(Value::Null),
        "checks": checks,
        "verdict": if r.passed() { "pass" } else { "fail" },
    })
}
