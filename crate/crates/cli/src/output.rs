//! Report document assembly and rendering.
//!
//! JSON layout: `{"command", "spin"?, "payload", "checks": [{name, residual,
//! tolerance, pass}]}`. Complex numbers are two-element `[re, im]` arrays and
//! matrices are row-major nested arrays, lossless at double precision. The
//! table format renders the same data for people.

use num_complex::Complex64;
use pl_core::{CMatrix, Check};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin: Option<String>,
    pub payload: Value,
    pub checks: Vec<Check>,
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_json(m: &CMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| complex_json(m[(i, j)])).collect()))
        .collect();
    Value::Array(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

pub fn render(doc: &ReportDocument, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(doc).expect("report serializes"));
        }
        Format::Table => render_table(doc),
    }
}

fn fmt_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn complex_pair(v: &Value) -> Option<(f64, f64)> {
    let arr = v.as_array()?;
    if arr.len() == 2 {
        if let (Some(re), Some(im)) = (arr[0].as_f64(), arr[1].as_f64()) {
            return Some((re, im));
        }
    }
    None
}

fn is_matrix(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|rows| !rows.is_empty() && rows.iter().all(|r| {
            r.as_array().is_some_and(|entries| !entries.is_empty() && entries.iter().all(|e| complex_pair(e).is_some()))
        }))
}

fn render_scalar(v: &Value) -> String {
    if let Some((re, im)) = complex_pair(v) {
        return fmt_complex(re, im);
    }
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Keys whose values are real vectors, not [re, im] pairs.
fn is_real_vector_key(key: &str) -> bool {
    matches!(key, "coefficients" | "momentum" | "spins")
}

fn render_payload_entry(key: &str, v: &Value, indent: &str) {
    match v {
        Value::Array(items) if is_real_vector_key(key) => {
            let cells: Vec<String> = items.iter().map(render_scalar).collect();
            println!("{indent}{key}: {}", cells.join(", "));
        }
        Value::Array(items) if is_matrix(v) => {
            println!("{indent}{key}:");
            for row in items {
                let cells: Vec<String> = row
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|e| {
                        let (re, im) = complex_pair(e).unwrap();
                        format!("{:>12}", fmt_trimmed(re, im))
                    })
                    .collect();
                println!("{indent}  [ {} ]", cells.join("  "));
            }
        }
        Value::Array(items) if items.iter().all(|e| complex_pair(e).is_some()) && !items.is_empty() => {
            let cells: Vec<String> = items.iter().map(render_scalar).collect();
            println!("{indent}{key}: {}", cells.join(", "));
        }
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            println!("{indent}{key}:");
            for item in items {
                let fields: Vec<String> = item
                    .as_object()
                    .unwrap()
                    .iter()
                    .map(|(k, val)| {
                        if is_real_vector_key(k) {
                            let cells: Vec<String> =
                                val.as_array().map(|a| a.iter().map(render_scalar).collect()).unwrap_or_default();
                            format!("{k}=[{}]", cells.join(", "))
                        } else {
                            format!("{k}={}", render_scalar(val))
                        }
                    })
                    .collect();
                println!("{indent}  - {}", fields.join("  "));
            }
        }
        Value::Object(map) => {
            println!("{indent}{key}:");
            for (k, val) in map {
                render_payload_entry(k, val, &format!("{indent}  "));
            }
        }
        other => println!("{indent}{key}: {}", render_scalar(other)),
    }
}

fn fmt_trimmed(re: f64, im: f64) -> String {
    let trim = |x: f64| {
        let rounded = (x * 1e6).round() / 1e6;
        format!("{rounded}")
    };
    if im == 0.0 {
        trim(re)
    } else if re == 0.0 {
        format!("{}i", trim(im))
    } else if im < 0.0 {
        format!("{}-{}i", trim(re), trim(-im))
    } else {
        format!("{}+{}i", trim(re), trim(im))
    }
}

fn render_table(doc: &ReportDocument) {
    println!("command: {}", doc.command);
    if let Some(spin) = &doc.spin {
        println!("spin: {spin}");
    }
    if let Some(map) = doc.payload.as_object() {
        for (k, v) in map {
            render_payload_entry(k, v, "");
        }
    }
    if doc.checks.is_empty() {
        return;
    }
    let name_width = doc.checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
    println!("checks:");
    println!("  {:<name_width$}  {:>13}  {:>10}  result", "name", "residual", "tolerance");
    for c in &doc.checks {
        println!(
            "  {:<name_width$}  {:>13.6e}  {:>10.1e}  {}",
            c.name,
            c.residual,
            c.tolerance,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    let passed = doc.checks.iter().filter(|c| c.pass).count();
    println!("{passed}/{} checks passed", doc.checks.len());
}
