//! Report structure and the json / csv / table renderers.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Global, Output};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub message: String,
}

impl Verdict {
    pub fn pass(message: impl Into<String>) -> Self {
        Self {
            status: Status::Pass,
            message: message.into(),
        }
    }

    pub fn fail(message: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            message: message.into(),
        }
    }

    pub fn info(message: impl Into<String>) -> Self {
        Self {
            status: Status::Info,
            message: message.into(),
        }
    }

    pub fn check(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Self {
        if ok {
            Self::pass(pass)
        } else {
            Self::fail(fail)
        }
    }
}

/// Everything needed to rerun a command; the worker count is left out since it never changes results.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub field: &'static str,
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    pub radius: f64,
    pub bound: u32,
    pub tol: f64,
    pub params: Value,
}

impl ConfigEcho {
    pub fn new(g: &Global, params: Value) -> Self {
        Self {
            field: g.field.symbol(),
            dim: g.dim,
            samples: g.samples,
            seed: g.seed,
            radius: g.radius,
            bound: g.bound,
            tol: g.tol,
            params,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    pub seed: u64,
    pub results: Vec<Value>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(command: &str, config: ConfigEcho, results: Vec<Value>, verdict: Verdict) -> Self {
        let seed = config.seed;
        Self {
            command: command.to_string(),
            config,
            seed,
            results,
            verdict,
        }
    }

    pub fn render(&self, output: Output, out: &mut impl Write) -> Result<(), CliError> {
        match output {
            Output::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Output::Csv => {
                let (headers, rows) = tabulate(&self.results, true);
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&headers)?;
                for r in rows {
                    w.write_record(&r)?;
                }
                w.flush()?;
            }
            Output::Table => {
                writeln!(out, "{}", self.command)?;
                let (headers, rows) = tabulate(&self.results, false);
                if rows.is_empty() {
                    writeln!(out, "(no rows)")?;
                } else {
                    write_table(out, &headers, &rows)?;
                }
                let tag = match self.verdict.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                writeln!(out, "{tag}: {}", self.verdict.message)?;
            }
        }
        Ok(())
    }
}

/// Serialize a row struct into a result entry.
pub fn row(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("result rows serialize")
}

/// Longest array cell shown in a table before it is cut; json and csv keep everything.
const TABLE_CELL: usize = 48;

fn cell(v: &Value, exact: bool) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => i.to_string(),
            (_, Some(u), _) => u.to_string(),
            (_, _, Some(f)) if !exact => format!("{f:.6}"),
            (_, _, Some(f)) => f.to_string(),
            _ => n.to_string(),
        },
        other if exact => other.to_string(),
        other => {
            let s = other.to_string();
            match s.char_indices().nth(TABLE_CELL) {
                Some((cut, _)) => format!("{}...", &s[..cut]),
                None => s,
            }
        }
    }
}

/// Column union in first-seen order, one row per result object.
fn tabulate(results: &[Value], exact: bool) -> (Vec<String>, Vec<Vec<String>>) {
    let mut headers: Vec<String> = Vec::new();
    let empty = Map::new();
    for r in results {
        for k in r.as_object().unwrap_or(&empty).keys() {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let rows = results
        .iter()
        .map(|r| {
            let obj = r.as_object().unwrap_or(&empty);
            headers
                .iter()
                .map(|h| obj.get(h).map_or(String::new(), |v| cell(v, exact)))
                .collect()
        })
        .collect();
    (headers, rows)
}

fn write_table(
    out: &mut impl Write,
    headers: &[String],
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([h.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(headers))?;
    for r in rows {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}
