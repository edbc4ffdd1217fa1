use std::fs;
use std::io::Write;

use clonelab::format::g12;
use clonelab::qmath::{ComplexMatrix, DensityOperator};
use serde_json::{json, Map, Value};

use crate::commands::{Failure, Outcome};
use crate::{Common, Format};

pub fn emit(common: &Common, out: &Outcome) -> Result<(), Failure> {
    match &common.out {
        Some(path) => {
            fs::write(path, &out.body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.body.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

/// Rounds every number to 12 significant digits, recursively.
pub fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => {
                g12(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

pub fn config_json(common: &Common, extra: Value) -> Value {
    let tolerances: Map<String, Value> = common.tol.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let mut config = json!({
        "grid": common.grid,
        "seed": common.seed,
        "shots": common.shots,
        "format": match common.format { Some(Format::Csv) => "csv", Some(Format::Json) => "json", None => "default" },
        "tolerances": tolerances,
    });
    if let (Value::Object(c), Value::Object(e)) = (&mut config, extra) {
        c.extend(e);
    }
    config
}

/// `{command, config, results, checks}`, pretty-printed with a trailing newline.
pub fn envelope(command: &str, config: Value, results: Value, checks: Value) -> String {
    let doc = json!({ "command": command, "config": config, "results": results, "checks": checks });
    let mut s = serde_json::to_string_pretty(&round_numbers(doc)).expect("serializable");
    s.push('\n');
    s
}

pub fn matrix_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
        .collect();
    Value::Array(rows)
}

pub fn density_json(rho: &DensityOperator) -> Value {
    matrix_json(rho.matrix())
}

pub fn complex_text(re: f64, im: f64) -> String {
    if im == 0.0 {
        g12(re)
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", g12(re), g12(im.abs()))
    }
}

pub fn matrix_text(m: &ComplexMatrix, indent: &str) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| complex_text(m[(i, j)].re, m[(i, j)].im)).collect();
        out.push_str(&format!("{indent}[{}]\n", row.join(", ")));
    }
    out
}

/// One CSV line from already formatted fields.
pub fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}
