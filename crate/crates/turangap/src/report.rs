//! JSON documents, certificates, CSV tables and atomic file output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use turangap_core::lemmas::{Check, LemmaReport, Relation, Status, Table, Value};
use turangap_core::solvers::{EdgeSubsetCertificate, PartitionCertificate};

pub const TOOL: &str = "turangap";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Run metadata that legitimately differs between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub threads: usize,
    pub wall_time_ms: u128,
}

/// What gets written: the envelope and a deterministic body.
#[derive(Debug, Clone, Serialize)]
pub struct Document<'a, T: Serialize> {
    pub envelope: Envelope,
    pub report: &'a T,
}

/// Flat certificate record shared by both subgraph problems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CertificateJson {
    pub problem: String,
    pub n: usize,
    pub k_or_r: usize,
    pub value: usize,
    pub assignment_or_edges: serde_json::Value,
    pub solver: String,
    pub deterministic: bool,
    pub exact: bool,
}

impl CertificateJson {
    pub fn partition(n: usize, cert: &PartitionCertificate) -> Self {
        Self {
            problem: "max-k-cut".into(),
            n,
            k_or_r: cert.k,
            value: cert.value,
            assignment_or_edges: serde_json::json!(cert.assignment),
            solver: cert.solver.name().into(),
            deterministic: true,
            exact: cert.solver.is_exact(),
        }
    }

    pub fn edges(n: usize, cert: &EdgeSubsetCertificate) -> Self {
        Self {
            problem: "max-kr-free".into(),
            n,
            k_or_r: cert.r,
            value: cert.value,
            assignment_or_edges: serde_json::json!(cert.kept_edges),
            solver: cert.solver.name().into(),
            deterministic: true,
            exact: cert.solver.is_exact(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum WriteError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), WriteError> {
    let io = |source| WriteError::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.flush().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), WriteError> {
    write_atomic(path, to_json(value)?.as_bytes())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let line = |cells: &[String]| cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    out.push_str(&line(columns));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

pub fn table_csv(t: &Table) -> String {
    csv(&t.columns, &t.rows)
}

/// The checks of a report as CSV rows.
pub fn checks_csv(rep: &LemmaReport) -> String {
    let columns: Vec<String> = ["check", "computed", "relation", "expected", "tolerance", "status", "reference"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = rep
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                show_value(&c.computed),
                relation_symbol(c.relation).into(),
                show_value(&c.expected),
                format!("{:e}", c.tolerance),
                status_word(c.status).into(),
                c.reference.clone().unwrap_or_default(),
            ]
        })
        .collect();
    csv(&columns, &rows)
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Inconclusive => "inconclusive",
    }
}

fn relation_symbol(r: Relation) -> &'static str {
    match r {
        Relation::Lt => "<",
        Relation::Le => "<=",
        Relation::Gt => ">",
        Relation::Ge => ">=",
        Relation::Eq => "=",
        Relation::Within => "~",
    }
}

fn show_value(v: &Value) -> String {
    match v {
        Value::Float(x) => format!("{x:.10}"),
        Value::Exact(s) => s.clone(),
    }
}

fn describe(c: &Check) -> String {
    format!(
        "{} {} {}",
        show_value(&c.computed),
        relation_symbol(c.relation),
        show_value(&c.expected)
    )
}

/// Human-readable summary: one line per check, then the table if any (truncated).
pub fn render_report(rep: &LemmaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", rep.lemma, status_word(rep.status));
    for (k, v) in &rep.inputs {
        let _ = writeln!(out, "  {k} = {v}");
    }
    let width = rep.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &rep.checks {
        let tol = if c.tolerance > 0.0 {
            format!(" (tol {:e})", c.tolerance)
        } else {
            String::new()
        };
        let reference = c
            .reference
            .as_ref()
            .map(|r| format!(" [reference {r}]"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {:<13} {:<width$}  {}{}{}",
            status_word(c.status),
            c.name,
            describe(c),
            tol,
            reference
        );
    }
    if let Some(t) = &rep.table {
        let _ = writeln!(out, "  {}", t.columns.join(" | "));
        let shown = 12;
        for row in t.rows.iter().take(shown) {
            let _ = writeln!(out, "  {}", row.join(" | "));
        }
        if t.rows.len() > shown {
            let _ = writeln!(out, "  ... {} more rows", t.rows.len() - shown);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let cols = vec!["a".to_string(), "b".to_string()];
        let rows = vec![vec!["x,y".to_string(), "say \"hi\"".to_string()]];
        assert_eq!(csv(&cols, &rows), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn render_mentions_every_check() {
        let mut rep = LemmaReport::new("demo");
        rep.push(Check::float("alpha", 1.0, Relation::Le, 2.0, 0.0));
        rep.push(Check::flag("beta", false));
        let text = render_report(&rep);
        assert!(text.starts_with("demo: FAIL"));
        assert!(text.contains("alpha") && text.contains("beta"));
        assert_eq!(checks_csv(&rep).lines().count(), 3);
    }
}
