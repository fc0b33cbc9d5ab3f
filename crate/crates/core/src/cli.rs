//! Command-line front end: `scan`, `report` and `preset`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad configuration or input,
//! 3 numerical failure. Diagnostics go to stderr only.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic::DEFAULT_K_WINDOW;
use crate::fock::DEFAULT_TAIL_TOLERANCE;
use crate::io::{manifest_path, read_rows_csv, write_series_csv, write_series_json, RunManifest};
use crate::scan::{
    default_steps, detect_peaks, run_scan, ConcurrenceSeries, Method, Methods, PeakReport, ScanConfig, ScanRow,
    DEFAULT_PEAK_THRESHOLD,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "jc-revival", version, about = "Entanglement collapse and revival of two atoms in coherent-state cavities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate concurrence on a τ grid and write it as CSV or JSON.
    Scan(ScanArgs),
    /// Detect revivals in a scan CSV and write a JSON summary.
    Report(ReportArgs),
    /// Run a canned scan plus report.
    ///
    /// fig1: α=10, τ∈[0,200], 4001 points. The field strength is inferred
    /// from the revival at τ=20π (=2πα).
    /// fig2: α=10, τ∈[57,69], 2401 points, the first revival in detail.
    /// fig3a: α=5, τ∈[0,100], 2001 points (mean photon number 25).
    /// fig3b: α=6, τ∈[0,120], 2401 points (mean photon number 36).
    Preset(PresetArgs),
}

#[derive(Debug, clap::Args)]
struct ScanArgs {
    /// Coherent amplitude (real, ≥ 0).
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    tau_start: f64,
    #[arg(long)]
    tau_end: f64,
    /// Grid points including both ends [default: spacing 0.05].
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated subset of exact,xproj,series,analytic
    /// [default: all; analytic is dropped for α = 0].
    #[arg(long)]
    methods: Option<String>,
    #[arg(long = "tail-tol", default_value_t = DEFAULT_TAIL_TOLERANCE)]
    tail_tol: f64,
    #[arg(long, default_value_t = DEFAULT_K_WINDOW)]
    k_window: usize,
    /// Output file; stdout when omitted (no manifest is written then).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads [default: available cores].
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, clap::Args)]
struct ReportArgs {
    /// Scan CSV.
    #[arg(long = "in")]
    input: PathBuf,
    /// Report JSON; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Coherent amplitude; read from the manifest sidecar when omitted.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_PEAK_THRESHOLD)]
    threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3a,
    Fig3b,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
        }
    }

    /// `(α, τ_start, τ_end, steps)`
    pub fn parameters(self) -> (f64, f64, f64, usize) {
        match self {
            Preset::Fig1 => (10.0, 0.0, 200.0, 4001),
            Preset::Fig2 => (10.0, 57.0, 69.0, 2401),
            Preset::Fig3a => (5.0, 0.0, 100.0, 2001),
            Preset::Fig3b => (6.0, 0.0, 120.0, 2401),
        }
    }

    pub fn config(self) -> ScanConfig {
        let (alpha, start, end, steps) = self.parameters();
        ScanConfig::new(alpha, start, end).with_steps(steps)
    }
}

#[derive(Debug, clap::Args)]
struct PresetArgs {
    #[arg(value_enum)]
    name: Preset,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long)]
    workers: Option<usize>,
}

/// Peak summaries for every concurrence column present in a scan.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub alpha: Option<f64>,
    pub rows: usize,
    pub columns: Vec<PeakReport>,
}

pub fn build_report(rows: &[ScanRow], alpha: Option<f64>, threshold: f64) -> Result<Report> {
    if rows.is_empty() {
        return Ok(Report { alpha, rows: 0, columns: Vec::new() });
    }
    let alpha = alpha.ok_or_else(|| Error::InvalidParameter("alpha unknown: pass --alpha or keep the manifest next to the scan".into()))?;
    let columns = Method::ALL
        .into_iter()
        .filter(|&m| rows.iter().any(|r| r.concurrence(m).is_some()))
        .map(|m| detect_peaks(rows, alpha, m, threshold))
        .collect();
    Ok(Report { alpha: Some(alpha), rows: rows.len(), columns })
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::AtTau { source, .. } => exit_code(source),
        Error::Numerical(_) => EXIT_NUMERICAL,
        Error::Io(_) => EXIT_IO,
        Error::Csv(e) if e.is_io_error() => EXIT_IO,
        Error::Json(e) if e.is_io() => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => {
            let mut w = create(p)?;
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn emit_series(series: &ConcurrenceSeries, format: Format, out: Option<&Path>) -> Result<()> {
    let write = |w: &mut dyn Write| match format {
        Format::Csv => write_series_csv(series, w),
        Format::Json => write_series_json(series, w),
    };
    match out {
        Some(p) => {
            let mut w = create(p)?;
            write(&mut w)?;
            w.flush()?;
        }
        None => write(&mut io::stdout().lock())?,
    }
    Ok(())
}

fn scan_and_write(config: &ScanConfig, format: Format, out: Option<&Path>, argv: &[String]) -> Result<ConcurrenceSeries> {
    let start = Instant::now();
    let series = run_scan(config)?;
    emit_series(&series, format, out)?;
    if let Some(p) = out {
        RunManifest::new(&series, argv.to_vec(), start.elapsed().as_secs_f64()).write(&manifest_path(p))?;
    }
    Ok(series)
}

fn cmd_scan(args: ScanArgs, argv: &[String]) -> Result<()> {
    let mut config = ScanConfig::new(args.alpha, args.tau_start, args.tau_end);
    config.steps = args.steps.unwrap_or_else(|| default_steps(args.tau_start, args.tau_end));
    if let Some(m) = &args.methods {
        config.methods = m.parse::<Methods>()?;
    }
    config.tail_tolerance = args.tail_tol;
    config.k_window = args.k_window;
    config.workers = args.workers.unwrap_or_else(default_workers);
    scan_and_write(&config, args.format, args.out.as_deref(), argv)?;
    Ok(())
}

fn cmd_report(args: ReportArgs) -> Result<()> {
    let rows = read_rows_csv(BufReader::new(File::open(&args.input)?))?;
    let alpha = match args.alpha {
        Some(a) => Some(a),
        None => {
            let m = manifest_path(&args.input);
            m.exists().then(|| RunManifest::read(&m)).transpose()?.map(|m| m.config.alpha)
        }
    };
    let report = build_report(&rows, alpha, args.threshold)?;
    write_json(&report, args.out.as_deref())
}

fn cmd_preset(args: PresetArgs, argv: &[String]) -> Result<()> {
    let config = args.name.config().with_workers(args.workers.unwrap_or_else(default_workers));
    let csv_path = args.out_dir.join(format!("{}.csv", args.name.name()));
    let series = scan_and_write(&config, Format::Csv, Some(&csv_path), argv)?;
    let report = build_report(&series.rows, Some(series.alpha), DEFAULT_PEAK_THRESHOLD)?;
    write_json(&report, Some(&args.out_dir.join(format!("{}.report.json", args.name.name()))))?;
    eprintln!("wrote {}", csv_path.display());
    Ok(())
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            // help and version go to stdout, parse errors to stderr
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Scan(a) => cmd_scan(a, &argv),
        Command::Report(a) => cmd_report(a),
        Command::Preset(a) => cmd_preset(a, &argv),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
