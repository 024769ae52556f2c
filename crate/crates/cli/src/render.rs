//! Report output as JSON, CSV or plain text.

use std::fmt::Write as _;

use crate::{Format, Report, UsageError};

pub fn render(report: &Report, format: Format) -> Result<String, UsageError> {
    match format {
        Format::Json => Ok(to_json(report)),
        Format::Csv => to_csv(report),
        Format::Text => Ok(to_text(report)),
    }
}

pub fn to_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

fn csv_error(e: impl std::fmt::Display) -> UsageError {
    UsageError(format!("csv output failed: {e}"))
}

/// Dimension and radical tables become their own columns; every other
/// command lists its checks.
pub fn to_csv(report: &Report) -> Result<String, UsageError> {
    if report.gram.is_some() {
        return Err(UsageError(
            "Gram matrices are emitted as JSON or text only".to_string(),
        ));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(rows) = &report.dimensions {
        w.write_record(["weight", "dim_M", "dim_VJ"])
            .map_err(csv_error)?;
        for r in rows {
            w.write_record([
                r.weight.to_string(),
                r.dim_m.to_string(),
                r.dim_vj.to_string(),
            ])
            .map_err(csv_error)?;
        }
    } else if let Some(rows) = &report.radical {
        w.write_record(["weight", "dim_VJ", "nullity"])
            .map_err(csv_error)?;
        for r in rows {
            w.write_record([
                r.weight.to_string(),
                r.dim_vj.to_string(),
                r.nullity.to_string(),
            ])
            .map_err(csv_error)?;
        }
    } else if let Some(g) = &report.griess {
        let mut header = vec!["left".to_string(), "right".to_string()];
        header.extend(g.basis.iter().cloned());
        w.write_record(&header).map_err(csv_error)?;
        for e in &g.products {
            let mut row = vec![e.left.clone(), e.right.clone()];
            row.extend(e.product.iter().cloned());
            w.write_record(&row).map_err(csv_error)?;
        }
    } else {
        w.write_record(["identity", "cases", "failures", "status"])
            .map_err(csv_error)?;
        for c in &report.checks {
            let status = if c.passed() { "pass" } else { "fail" };
            w.write_record([
                c.identity.clone(),
                c.cases.to_string(),
                c.failures.to_string(),
                status.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    let c = &report.config;
    let _ = writeln!(
        out,
        "{} d={} r={} max-weight={}",
        report.command, c.d, c.r, c.max_weight
    );
    for check in &report.checks {
        let status = if check.passed() { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "  {status} {} ({} cases)", check.identity, check.cases);
    }
    if let Some(cc) = &report.central_charge {
        let _ = writeln!(out, "central charge: {cc}");
    }
    if let Some(rows) = &report.dimensions {
        let _ = writeln!(out, "weight  dim M  dim V_J");
        for r in rows {
            let _ = writeln!(out, "{:>6}  {:>5}  {:>7}", r.weight, r.dim_m, r.dim_vj);
        }
    }
    if let Some(g) = &report.griess {
        for e in &g.products {
            let terms: Vec<String> = g
                .basis
                .iter()
                .zip(&e.product)
                .filter(|(_, c)| c.as_str() != "0")
                .map(|(b, c)| format!("({c}){b}"))
                .collect();
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            let _ = writeln!(out, "({})_1 {} = {rhs}", e.left, e.right);
        }
    }
    if let Some(entries) = &report.gram {
        for e in entries {
            let _ = writeln!(out, "weight {}: basis {}", e.weight, e.labels.join(", "));
            for row in &e.matrix {
                let _ = writeln!(out, "  [{}]", row.join(", "));
            }
            let _ = writeln!(out, "  det = {}", e.determinant);
        }
    }
    if let Some(rows) = &report.radical {
        let _ = writeln!(out, "weight  dim V_J  nullity");
        for r in rows {
            let _ = writeln!(out, "{:>6}  {:>7}  {:>7}", r.weight, r.dim_vj, r.nullity);
        }
    }
    if let Some(failure) = report.first_failure() {
        let _ = writeln!(out, "first failure: {}", failure.identity);
        if let Some(w) = &failure.witness {
            let _ = writeln!(out, "  at   {}", w.context);
            if !w.vector.is_empty() {
                let _ = writeln!(out, "  on   {}", w.vector);
            }
            let _ = writeln!(out, "  lhs  {}", w.lhs);
            let _ = writeln!(out, "  rhs  {}", w.rhs);
        }
    }
    let _ = writeln!(out, "{}", if report.passed { "PASS" } else { "FAIL" });
    out
}
