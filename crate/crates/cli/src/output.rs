//! Rendering of reports as JSON, CSV or text.

use std::fmt::Write;

use serde_json::Value;

use crate::config::{Command, OutputFormat, RunConfig};
use crate::CliError;

/// Renders a report in the configured format, always ending in a newline.
pub fn render(cfg: &RunConfig, report: &Value) -> Result<String, CliError> {
    let format = cfg.output_format();
    let mut out = match (format, cfg.command) {
        (OutputFormat::Json, _) => serde_json::to_string_pretty(report).map_err(std::io::Error::from)?,
        (OutputFormat::Csv, _) => flatten(report).into_iter().map(|(k, v)| format!("{k},{v}")).collect::<Vec<_>>().join("\n"),
        (OutputFormat::Text, Command::Identities) if report.get("identities").is_some() => identities_text(report),
        (OutputFormat::Text, _) => flatten(report).into_iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"),
    };
    out.push('\n');
    Ok(out)
}

/// Leaf values keyed by dotted paths, in key order.
fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    go(&key, child, out);
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    go(&format!("{prefix}.{i}"), child, out);
                }
            }
            Value::String(s) => out.push((prefix.to_owned(), s.clone())),
            other => out.push((prefix.to_owned(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

fn identities_text(report: &Value) -> String {
    let mut out = format!("{:<30} {:>7} {:>12} {:>10}  {}\n", "identity", "points", "max_rel_err", "tolerance", "result");
    for c in report["identities"].as_array().into_iter().flatten() {
        let pass = c["pass"].as_bool().unwrap_or(false);
        let _ = writeln!(
            out,
            "{:<30} {:>7} {:>12.3e} {:>10.1e}  {}",
            c["name"].as_str().unwrap_or("?"),
            c["points"].as_u64().unwrap_or(0),
            c["max_rel_err"].as_f64().unwrap_or(f64::NAN),
            c["tolerance"].as_f64().unwrap_or(f64::NAN),
            if pass { "pass" } else { "FAIL" },
        );
        for e in c["errors"].as_array().into_iter().flatten() {
            let _ = writeln!(out, "    {}", e.as_str().unwrap_or(""));
        }
    }
    out.push_str(if report["all_pass"].as_bool() == Some(true) { "all pass" } else { "failures present" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_uses_dotted_paths() {
        let f = flatten(&json!({ "a": { "re": 1.5, "im": 0.0 }, "b": [1, 2], "c": "x" }));
        assert_eq!(
            f,
            vec![
                ("a.im".into(), "0.0".into()),
                ("a.re".into(), "1.5".into()),
                ("b.0".into(), "1".into()),
                ("b.1".into(), "2".into()),
                ("c".into(), "x".into()),
            ]
        );
    }
}
