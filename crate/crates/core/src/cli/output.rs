//! JSON-lines and CSV report files.

use serde::Serialize;
use serde_json::Value;

use crate::congruence::{CheckReport, Status};
use crate::exact::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn valuation_json(v: Option<Valuation>) -> Value {
    match v {
        None => Value::Null,
        Some(Valuation::Finite(k)) => Value::from(k),
        Some(other) => Value::from(other.to_string()),
    }
}

fn valuation_text(v: Option<Valuation>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct Record<'a> {
    check: &'a str,
    p: u64,
    r: u32,
    required_valuation: Value,
    achieved_valuation: Value,
    pass: bool,
    status: &'static str,
    lhs_digest: &'a str,
    rhs_digest: &'a str,
    elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct Footer {
    summary: bool,
    total: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
    errors: usize,
    wall_ms: Option<u64>,
    min_margin: Option<i64>,
}

/// Counts over a finished run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    pub min_margin: Option<i64>,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Summary {
            total: reports.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            errors: count(Status::Error),
            min_margin: reports.iter().filter_map(CheckReport::margin).min(),
        }
    }

    fn footer(&self, wall_ms: Option<u64>) -> Footer {
        Footer {
            summary: true,
            total: self.total,
            passed: self.passed,
            failed: self.failed,
            skipped: self.skipped,
            errors: self.errors,
            wall_ms,
            min_margin: self.min_margin,
        }
    }
}

/// Renders a report file. Timings are emitted only when given, so files
/// from identical runs are byte-identical. Fails if any record's status
/// disagrees with its valuations.
pub fn render(
    reports: &[CheckReport],
    format: Format,
    timings: bool,
    wall_ms: u64,
) -> Result<String, String> {
    if let Some(bad) = reports.iter().find(|r| !r.is_consistent()) {
        return Err(format!("internal error: inconsistent record {bad}"));
    }
    let summary = Summary::of(reports);
    let wall = timings.then_some(wall_ms);
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in reports {
                let record = Record {
                    check: &r.check,
                    p: r.p,
                    r: r.r,
                    required_valuation: valuation_json(Some(r.required_valuation)),
                    achieved_valuation: valuation_json(r.achieved_valuation),
                    pass: r.passed(),
                    status: r.status.as_str(),
                    lhs_digest: &r.lhs_digest,
                    rhs_digest: &r.rhs_digest,
                    elapsed_ms: timings.then_some(r.elapsed_ms),
                    note: r.note.as_deref(),
                };
                out.push_str(&serde_json::to_string(&record).map_err(|e| e.to_string())?);
                out.push('\n');
            }
            out.push_str(&serde_json::to_string(&summary.footer(wall)).map_err(|e| e.to_string())?);
            out.push('\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = [
                "check", "p", "r", "required_valuation", "achieved_valuation", "pass", "status",
                "lhs_digest", "rhs_digest", "elapsed_ms", "note",
            ];
            w.write_record(header).map_err(|e| e.to_string())?;
            for r in reports {
                let elapsed = if timings { r.elapsed_ms.to_string() } else { String::new() };
                w.write_record([
                    r.check.as_str(),
                    &r.p.to_string(),
                    &r.r.to_string(),
                    &r.required_valuation.to_string(),
                    &valuation_text(r.achieved_valuation),
                    if r.passed() { "true" } else { "false" },
                    r.status.as_str(),
                    &r.lhs_digest,
                    &r.rhs_digest,
                    &elapsed,
                    r.note.as_deref().unwrap_or(""),
                ])
                .map_err(|e| e.to_string())?;
            }
            let mut out = String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "# summary,total={},passed={},failed={},skipped={},errors={},wall_ms={},min_margin={}\n",
                summary.total,
                summary.passed,
                summary.failed,
                summary.skipped,
                summary.errors,
                opt(wall.map(|w| w as i64)),
                opt(summary.min_margin),
            ));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{check_k2, check_p2};

    #[test]
    fn json_lines() {
        let reports = vec![check_k2(3).unwrap(), check_p2(3).unwrap()];
        let text = render(&reports, Format::Json, false, 0).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with(r#"{"check":"k2","p":3,"r":1,"required_valuation":4,"achieved_valuation":4,"pass":true"#));
        assert!(lines[0].ends_with(r#""elapsed_ms":null}"#));
        assert!(lines[1].contains(r#""achieved_valuation":"+inf""#));
        let footer: Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(footer["total"], 2);
        assert_eq!(footer["min_margin"], 0);
        assert!(footer["wall_ms"].is_null());
    }

    #[test]
    fn csv_rows() {
        let reports = vec![check_k2(5).unwrap()];
        let text = render(&reports, Format::Csv, true, 7).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("check,p,r,required_valuation"));
        assert!(lines[1].starts_with("k2,5,1,4,4,true,pass,"));
        assert!(lines[2].starts_with("# summary,total=1,passed=1,"));
        assert!(lines[2].contains("wall_ms=7"));
    }

    #[test]
    fn empty_run_is_summary_only() {
        let text = render(&[], Format::Json, false, 0).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn inconsistent_records_are_refused() {
        let mut r = check_k2(3).unwrap();
        r.status = Status::Fail;
        assert!(render(&[r], Format::Json, false, 0).is_err());
    }
}
