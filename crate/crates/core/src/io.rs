//! CSV and JSON output for scans, plus the run manifest written beside them.
//!
//! The CSV layout is fixed: one row per grid point with the columns in
//! [`CSV_HEADER`], floats in `{:.16e}` form and empty fields for methods
//! that were not evaluated.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::scan::{ConcurrenceSeries, ScanConfig, ScanRow};
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "tau",
    "C_exact",
    "C_xproj",
    "C_series",
    "C_analytic",
    "abs_z",
    "a",
    "d",
    "max_offx",
    "trace_err",
    "branch_w_minus",
];

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

fn row_fields(r: &ScanRow) -> [String; 11] {
    [
        format!("{:.16e}", r.tau),
        fmt_opt(r.c_exact),
        fmt_opt(r.c_xproj),
        fmt_opt(r.c_series),
        fmt_opt(r.c_analytic),
        fmt_opt(r.abs_z),
        fmt_opt(r.a),
        fmt_opt(r.d),
        fmt_opt(r.max_offx),
        fmt_opt(r.trace_err),
        fmt_opt(r.branch_w_minus),
    ]
}

pub fn write_rows_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(row_fields(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_series_csv<W: Write>(series: &ConcurrenceSeries, out: W) -> Result<()> {
    write_rows_csv(&series.rows, out)
}

fn parse_field(s: &str, line: u64, column: &str) -> Result<Option<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(None);
    }
    s.parse::<f64>()
        .map(Some)
        .map_err(|_| Error::Malformed(format!("line {line}, column {column}: {s:?} is not a number")))
}

/// Reads rows back from the fixed CSV layout. The header must match
/// [`CSV_HEADER`] exactly and `tau` must be present on every row.
pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<ScanRow>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rdr.headers()?.clone();
    if header.is_empty() {
        return Ok(Vec::new());
    }
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Malformed(format!(
            "unexpected header {:?}, expected {}",
            header.iter().collect::<Vec<_>>(),
            CSV_HEADER.join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let f = |i: usize| parse_field(&rec[i], line, CSV_HEADER[i]);
        let tau = f(0)?.ok_or_else(|| Error::Malformed(format!("line {line}: missing tau")))?;
        rows.push(ScanRow {
            tau,
            c_exact: f(1)?,
            c_xproj: f(2)?,
            c_series: f(3)?,
            c_analytic: f(4)?,
            abs_z: f(5)?,
            a: f(6)?,
            d: f(7)?,
            max_offx: f(8)?,
            trace_err: f(9)?,
            branch_w_minus: f(10)?,
        });
    }
    Ok(rows)
}

pub fn write_series_json<W: Write>(series: &ConcurrenceSeries, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, series)?;
    Ok(())
}

/// Provenance of one scan: everything needed to reproduce the file next to
/// it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub version: String,
    pub config: ScanConfig,
    pub n_max: usize,
    pub tail_mass: f64,
    pub wall_time_secs: f64,
}

impl RunManifest {
    pub fn new(series: &ConcurrenceSeries, command_line: Vec<String>, wall_time_secs: f64) -> Self {
        Self {
            command_line,
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: series.config.clone(),
            n_max: series.n_max,
            tail_mass: series.tail_mass,
            wall_time_secs,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, self)?;
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
    }
}

/// `out.csv` → `out.manifest.json`
pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}
