//! Serialization of verification reports and scans: JSON with a stable
//! field order and exact 17-significant-digit floats, CSV with dotted keys,
//! and a compact text rendering.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

fn parse_err(msg: String) -> Error {
    Error::Io(std::io::Error::new(std::io::ErrorKind::InvalidData, msg))
}
use crate::experiments::{ScanResult, VerificationReport};

/// Render a float with 17 significant digits, round-trip exact for f64.
fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "\"nan\"".into()
    } else if v > 0.0 {
        "\"inf\"".into()
    } else {
        "\"-inf\"".into()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_str_map(map: &BTreeMap<String, String>) -> String {
    let body: Vec<String> = map
        .iter()
        .map(|(k, v)| format!("\"{}\": \"{}\"", json_escape(k), json_escape(v)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

fn json_f64_map(map: &BTreeMap<String, f64>) -> String {
    let body: Vec<String> = map
        .iter()
        .map(|(k, v)| format!("\"{}\": {}", json_escape(k), fmt_f64(*v)))
        .collect();
    format!("{{{}}}", body.join(", "))
}

/// JSON with a fixed field order; identical inputs yield byte-identical
/// output apart from the wall-clock `runtime_ms` field.
pub fn report_to_json(r: &VerificationReport) -> String {
    format!(
        "{{\n  \"name\": \"{}\",\n  \"inputs\": {},\n  \"computed\": {},\n  \"reference\": {},\n  \"rel_errors\": {},\n  \"tolerances\": {},\n  \"passed\": {},\n  \"inconclusive\": {},\n  \"runtime_ms\": {}\n}}",
        json_escape(&r.name),
        json_str_map(&r.inputs),
        json_f64_map(&r.computed),
        json_f64_map(&r.reference),
        json_f64_map(&r.rel_errors),
        json_f64_map(&r.tolerances),
        r.passed,
        r.inconclusive,
        r.runtime_ms
    )
}

fn value_f64(v: &serde_json::Value, ctx: &str) -> Result<f64> {
    match v {
        serde_json::Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| parse_err(format!("non-f64 number in {ctx}"))),
        serde_json::Value::String(s) => match s.as_str() {
            "nan" => Ok(f64::NAN),
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            _ => Err(parse_err(format!("unexpected string '{s}' in {ctx}"))),
        },
        _ => Err(parse_err(format!("unexpected value in {ctx}"))),
    }
}

fn take_f64_map(v: &serde_json::Value, key: &str) -> Result<BTreeMap<String, f64>> {
    let obj = v
        .get(key)
        .and_then(|m| m.as_object())
        .ok_or_else(|| parse_err(format!("missing object field '{key}'")))?;
    obj.iter()
        .map(|(k, val)| Ok((k.clone(), value_f64(val, key)?)))
        .collect()
}

/// Parse a report previously emitted by [`report_to_json`].
pub fn report_from_json(s: &str) -> Result<VerificationReport> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| parse_err(format!("invalid report JSON: {e}")))?;
    let name = v
        .get("name")
        .and_then(|x| x.as_str())
        .ok_or_else(|| parse_err("missing 'name'".into()))?
        .to_string();
    let inputs = v
        .get("inputs")
        .and_then(|m| m.as_object())
        .ok_or_else(|| parse_err("missing 'inputs'".into()))?
        .iter()
        .map(|(k, val)| {
            Ok((
                k.clone(),
                val.as_str()
                    .ok_or_else(|| parse_err("non-string input".into()))?
                    .to_string(),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(VerificationReport {
        name,
        inputs,
        computed: take_f64_map(&v, "computed")?,
        reference: take_f64_map(&v, "reference")?,
        rel_errors: take_f64_map(&v, "rel_errors")?,
        tolerances: take_f64_map(&v, "tolerances")?,
        passed: v.get("passed").and_then(|x| x.as_bool()).unwrap_or(false),
        inconclusive: v
            .get("inconclusive")
            .and_then(|x| x.as_bool())
            .unwrap_or(false),
        runtime_ms: v.get("runtime_ms").and_then(|x| x.as_u64()).unwrap_or(0),
    })
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One header row and one value row; map entries become dotted keys
/// (`computed.ratio`, `inputs.dim`, …).
pub fn report_to_csv(r: &VerificationReport) -> String {
    let mut headers = vec!["name".to_string()];
    let mut values = vec![csv_quote(&r.name)];
    for (k, v) in &r.inputs {
        headers.push(format!("inputs.{k}"));
        values.push(csv_quote(v));
    }
    for (section, map) in [
        ("computed", &r.computed),
        ("reference", &r.reference),
        ("rel_errors", &r.rel_errors),
        ("tolerances", &r.tolerances),
    ] {
        for (k, v) in map.iter() {
            headers.push(format!("{section}.{k}"));
            values.push(format!("{v:.16e}"));
        }
    }
    headers.push("passed".into());
    values.push(r.passed.to_string());
    headers.push("inconclusive".into());
    values.push(r.inconclusive.to_string());
    headers.push("runtime_ms".into());
    values.push(r.runtime_ms.to_string());
    format!("{}\n{}\n", headers.join(","), values.join(","))
}

/// Compact human-readable rendering.
pub fn report_to_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "[{}] {}\n",
        if r.passed {
            "PASS"
        } else if r.inconclusive {
            "INCONCLUSIVE"
        } else {
            "FAIL"
        },
        r.name
    ));
    for (k, v) in &r.inputs {
        out.push_str(&format!("  input {k} = {v}\n"));
    }
    for (k, v) in &r.computed {
        match (r.reference.get(k), r.rel_errors.get(k), r.tolerances.get(k)) {
            (Some(refv), Some(err), Some(tol)) => out.push_str(&format!(
                "  {k}: {v:.12e} vs {refv:.12e} (rel err {err:.2e}, tol {tol:.1e})\n"
            )),
            _ => out.push_str(&format!("  {k}: {v:.12e}\n")),
        }
    }
    out.push_str(&format!("  runtime: {} ms\n", r.runtime_ms));
    out
}

/// JSON for a scan: parallel arrays plus the fit summary.
pub fn scan_to_json(s: &ScanResult) -> String {
    let deltas: Vec<String> = s.deltas.iter().map(|v| fmt_f64(*v)).collect();
    let values: Vec<String> = s.values.iter().map(|v| fmt_f64(*v)).collect();
    format!(
        "{{\n  \"name\": \"{}\",\n  \"deltas\": [{}],\n  \"values\": [{}],\n  \"fitted_slope\": {},\n  \"slope_stderr\": {},\n  \"theory_slope\": {}\n}}",
        json_escape(&s.name),
        deltas.join(", "),
        values.join(", "),
        fmt_f64(s.fitted_slope),
        fmt_f64(s.slope_stderr),
        fmt_f64(s.theory_slope)
    )
}

/// Two-column table, one row per δ — the plot-ready form.
pub fn scan_to_csv(s: &ScanResult) -> String {
    let mut out = String::from("delta,value\n");
    for (d, v) in s.deltas.iter().zip(&s.values) {
        out.push_str(&format!("{d:.16e},{v:.16e}\n"));
    }
    out
}

pub fn scan_to_text(s: &ScanResult) -> String {
    let mut out = format!(
        "scan {}: fitted slope {:.6} (stderr {:.2e}), theory {:.6}\n",
        s.name, s.fitted_slope, s.slope_stderr, s.theory_slope
    );
    for (d, v) in s.deltas.iter().zip(&s.values) {
        out.push_str(&format!("  delta = {d:.6e}  value = {v:.10e}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::VerificationReport;
    use std::time::Instant;

    fn sample_report() -> VerificationReport {
        let start = Instant::now();
        let mut r = VerificationReport::new("sample");
        r.input("dim", 3);
        r.input("beta", 0.25);
        r.add_check("ratio", 1.0000000001, 1.0, 1e-3);
        r.add_bound("margin", 0.97, 1.0, 0.0);
        r.add_info("diagnostic", 42.125);
        r.finalize(start);
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample_report();
        let parsed = report_from_json(&report_to_json(&r)).unwrap();
        assert_eq!(r, parsed);
    }

    #[test]
    fn json_is_deterministic_modulo_runtime() {
        let mut a = sample_report();
        let mut b = sample_report();
        a.runtime_ms = 0;
        b.runtime_ms = 0;
        assert_eq!(report_to_json(&a), report_to_json(&b));
    }

    #[test]
    fn floats_survive_exactly() {
        let start = Instant::now();
        let mut r = VerificationReport::new("exact");
        let v = std::f64::consts::PI * 1e-7;
        r.add_check("x", v, 1.0 / 3.0, 1e-3);
        r.finalize(start);
        let parsed = report_from_json(&report_to_json(&r)).unwrap();
        assert_eq!(parsed.computed["x"].to_bits(), v.to_bits());
        assert_eq!(parsed.reference["x"].to_bits(), (1.0f64 / 3.0).to_bits());
    }

    #[test]
    fn csv_one_row_per_delta() {
        let s = ScanResult {
            name: "I1".into(),
            deltas: vec![1e-3, 5e-4, 2.5e-4],
            values: vec![2.0, 3.1, 4.9],
            fitted_slope: -0.75,
            slope_stderr: 0.01,
            theory_slope: -0.75,
        };
        let csv = scan_to_csv(&s);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("delta,value\n"));
    }

    #[test]
    fn report_csv_has_dotted_keys() {
        let csv = report_to_csv(&sample_report());
        let header = csv.lines().next().unwrap();
        assert!(header.contains("inputs.dim"));
        assert!(header.contains("computed.ratio"));
        assert!(header.contains("tolerances.margin"));
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn text_marks_verdict() {
        let txt = report_to_text(&sample_report());
        assert!(txt.starts_with("[PASS] sample"));
    }
}
