use std::fmt::Write;
use std::str::FromStr;

use crate::suite::{Status, SuiteReport};
use crate::WorkbenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self, WorkbenchError> {
        match s {
            "text" => Ok(Format::Text),
            "json" | "structured" => Ok(Format::Json),
            other => Err(WorkbenchError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn report_render(report: &SuiteReport, format: Format) -> Result<String, WorkbenchError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report)?;
            out.push('\n');
            Ok(out)
        }
        Format::Text => Ok(render_text(report)),
    }
}

fn cell(status: Status) -> &'static str {
    match status {
        Status::Holds => "yes",
        Status::Fails => "no",
        Status::Violation => "VIOLATION",
        Status::Skipped => "-",
        Status::Error => "error",
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "?".to_string(), |v| v.to_string())
}

fn render_text(report: &SuiteReport) -> String {
    let mut header = vec!["group".to_string(), "order".into(), "exp".into(), "class".into(), "d".into()];
    header.extend(report.checks.iter().map(|c| c.to_string()));
    let mut rows = vec![header];
    for g in &report.groups {
        let mut row = vec![g.name.clone(), g.order.to_string(), opt(g.exponent), opt(g.class), opt(g.d)];
        row.extend(report.checks.iter().map(|c| g.verdicts.get(c).map_or("", |v| cell(v.status)).to_string()));
        rows.push(row);
    }
    let widths: Vec<usize> =
        (0..rows[0].len()).map(|k| rows.iter().map(|r| r[k].chars().count()).max().unwrap_or(0)).collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "rps {} seed {} corpus {} ({} groups)",
        report.tool_version,
        report.seed,
        &report.corpus_digest[..report.corpus_digest.len().min(16)],
        report.groups.len()
    );
    for row in &rows {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    let mut notes = Vec::new();
    for g in &report.groups {
        for w in &g.witnesses {
            let elems = if w.elements.is_empty() { String::new() } else { format!(": {}", w.elements.join(", ")) };
            notes.push(format!("{} {}: {}{}", g.name, w.check, w.kind, elems));
        }
        for (check, v) in &g.verdicts {
            if matches!(v.status, Status::Violation | Status::Error) {
                notes.push(format!("{} {}: {}", g.name, check, v.detail));
            }
        }
    }
    if !notes.is_empty() {
        out.push('\n');
        for n in notes {
            let _ = writeln!(out, "{n}");
        }
    }
    let _ = writeln!(out, "\n{} theorem violations", report.violations());
    out
}
