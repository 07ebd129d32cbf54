//! CSV artifacts: `#` echo header, column header row, data rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use dispersive_core::Error;

use crate::request::{objective_tag, RunRequest};

/// Shortest decimal that round-trips, switching to exponent form for very
/// small or very large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(",")
}

/// Key/value echo of the fully resolved request.
pub fn echo_lines(command: &str, req: &RunRequest) -> Vec<String> {
    let mut lines = vec![format!("dispersive {}", env!("CARGO_PKG_VERSION"))];
    if req.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        lines.push(format!("generated_unix={secs}"));
    }
    lines.push(format!("command={command}"));
    if let Some(p) = &req.preset {
        lines.push(format!("preset={p}"));
    }
    lines.push(format!("grid.t_end={}", fmt_f64(req.grid.t_end())));
    lines.push(format!("grid.samples={}", req.grid.samples()));
    let tags: Vec<&str> = req.methods.iter().map(|m| m.tag()).collect();
    lines.push(format!("methods={}", tags.join(",")));
    lines.push(format!("fit.window_fraction={}", fmt_f64(req.fit.window_fraction)));
    lines.push(format!("fit.objective={}", objective_tag(req.fit.objective)));
    lines.push(format!("oracle.weight_tol={}", fmt_f64(req.truncation.weight_tol)));
    if let Some(s) = &req.sweep {
        lines.push(format!("sweep.param={}", s.param));
        lines.push(format!("sweep.values={}", join(&s.values)));
    }
    let labels: Vec<&str> = req.cases.iter().map(|c| c.label.as_str()).collect();
    lines.push(format!("cases={}", labels.join(",")));
    for c in &req.cases {
        for l in c.spec.echo_lines() {
            lines.push(format!("case[{}].{l}", c.label));
        }
    }
    lines
}

/// A finished table ready to be written.
#[derive(Debug, Default)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn write_to(&self, out: impl Write) -> Result<(), Error> {
        let mut out = BufWriter::new(out);
        for c in &self.comments {
            writeln!(out, "# {c}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header).map_err(csv_error)?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes to `path`, or stdout when `None`.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), Error> {
        match path {
            Some(p) => self.write_to(File::create(p)?),
            None => self.write_to(io::stdout().lock()),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(io::Error::other(format!("{other:?}"))),
    }
}
