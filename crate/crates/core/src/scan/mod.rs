//! Time sweeps over every concurrence route, plus revival detection.

mod peaks;

pub use peaks::{
    collapse_windows, detect_peaks, zero_crossings, CollapseWindow, DetectedPeak, PeakReport, RevivalPeak,
    DEFAULT_PEAK_THRESHOLD, ZERO_LEVEL,
};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{analytic_concurrence, AnalyticParams, DEFAULT_K_WINDOW};
use crate::density::{bell_density, bell_density_tensor, x_elements_series_for, x_project};
use crate::entanglement::{concurrence_wootters, concurrence_x};
use crate::fock::{coherent_field, CoherentCoefficients, DEFAULT_TAIL_TOLERANCE};
use crate::{Error, Result};

/// Default spacing of the `τ` grid; well below the Rabi-scale period
/// `π/(2α)` for `α ≤ 10`.
pub const DEFAULT_TAU_STEP: f64 = 0.05;

/// Concurrence routes a scan can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Wootters concurrence of the full reduced matrix.
    Exact,
    /// X-formula concurrence of the X-projected reduced matrix.
    Xproj,
    /// `2·max{0, |z| − √(ad)}` from the photon-number series.
    Series,
    /// Saddle-point closed form.
    Analytic,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Exact, Method::Xproj, Method::Series, Method::Analytic];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Xproj => "xproj",
            Method::Series => "series",
            Method::Analytic => "analytic",
        }
    }

    /// CSV column holding this method's concurrence.
    pub fn column(self) -> &'static str {
        match self {
            Method::Exact => "C_exact",
            Method::Xproj => "C_xproj",
            Method::Series => "C_series",
            Method::Analytic => "C_analytic",
        }
    }

    pub fn from_column(column: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.column() == column)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?} (expected exact, xproj, series or analytic)")))
    }
}

/// A set of [`Method`]s, written as a comma-separated list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Methods {
    pub exact: bool,
    pub xproj: bool,
    pub series: bool,
    pub analytic: bool,
}

impl Methods {
    pub fn all() -> Self {
        Self { exact: true, xproj: true, series: true, analytic: true }
    }

    pub fn only(method: Method) -> Self {
        let mut m = Self::default();
        m.insert(method);
        m
    }

    pub fn insert(&mut self, method: Method) {
        match method {
            Method::Exact => self.exact = true,
            Method::Xproj => self.xproj = true,
            Method::Series => self.series = true,
            Method::Analytic => self.analytic = true,
        }
    }

    pub fn contains(&self, method: Method) -> bool {
        match method {
            Method::Exact => self.exact,
            Method::Xproj => self.xproj,
            Method::Series => self.series,
            Method::Analytic => self.analytic,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Method> + '_ {
        Method::ALL.into_iter().filter(|&m| self.contains(m))
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }

    fn needs_density(&self) -> bool {
        self.exact || self.xproj
    }
}

impl fmt::Display for Methods {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Method::name).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for Methods {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Methods::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            out.insert(part.parse()?);
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("no methods requested".into()));
        }
        Ok(out)
    }
}

impl From<Methods> for String {
    fn from(m: Methods) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Methods {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// How the exact reduced matrix is contracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    /// Per-site overlaps, `O(n_max)` per grid point.
    #[default]
    Factorized,
    /// Full `(n, m)` amplitude tensor, `O(n_max²)` per grid point.
    Tensor,
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "factorized" => Ok(Kernel::Factorized),
            "tensor" => Ok(Kernel::Tensor),
            _ => Err(Error::InvalidParameter(format!("unknown kernel {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub alpha: f64,
    pub tau_start: f64,
    pub tau_end: f64,
    pub steps: usize,
    pub methods: Methods,
    pub tail_tolerance: f64,
    pub k_window: usize,
    /// Worker threads; results do not depend on it.
    pub workers: usize,
    pub kernel: Kernel,
}

impl ScanConfig {
    /// `[tau_start, tau_end]` at the default grid spacing, all methods valid
    /// for `alpha`, single worker.
    pub fn new(alpha: f64, tau_start: f64, tau_end: f64) -> Self {
        let steps = default_steps(tau_start, tau_end);
        let mut methods = Methods::all();
        methods.analytic = alpha > 0.0;
        Self {
            alpha,
            tau_start,
            tau_end,
            steps,
            methods,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            k_window: DEFAULT_K_WINDOW,
            workers: 1,
            kernel: Kernel::default(),
        }
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_methods(mut self, methods: Methods) -> Self {
        self.methods = methods;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_kernel(mut self, kernel: Kernel) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return bad(format!("alpha must be finite and non-negative, got {}", self.alpha));
        }
        if !(self.tau_start.is_finite() && self.tau_end.is_finite()) || self.tau_start < 0.0 || self.tau_end <= self.tau_start {
            return bad(format!("need 0 <= tau_start < tau_end, got [{}, {}]", self.tau_start, self.tau_end));
        }
        if self.steps < 2 {
            return bad(format!("need at least 2 steps, got {}", self.steps));
        }
        if self.methods.is_empty() {
            return bad("no methods requested".into());
        }
        if self.methods.analytic && self.alpha == 0.0 {
            return bad("the analytic method needs alpha > 0".into());
        }
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance < 1.0) {
            return bad(format!("tail tolerance must lie in (0, 1), got {}", self.tail_tolerance));
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }

    /// The `τ` grid; the last point is exactly `tau_end`.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.tau_end - self.tau_start;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| if i == last { self.tau_end } else { self.tau_start + span * i as f64 / last as f64 })
            .collect()
    }
}

/// Grid points for `[start, end]` at [`DEFAULT_TAU_STEP`].
pub fn default_steps(start: f64, end: f64) -> usize {
    (((end - start) / DEFAULT_TAU_STEP).round() as usize + 1).max(2)
}

/// One grid point. Columns of methods that were not requested stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ScanRow {
    pub tau: f64,
    pub c_exact: Option<f64>,
    pub c_xproj: Option<f64>,
    pub c_series: Option<f64>,
    pub c_analytic: Option<f64>,
    pub abs_z: Option<f64>,
    pub a: Option<f64>,
    pub d: Option<f64>,
    pub max_offx: Option<f64>,
    pub trace_err: Option<f64>,
    /// `|w| − √(bc)` of the X-projected matrix.
    pub branch_w_minus: Option<f64>,
}

impl ScanRow {
    pub fn concurrence(&self, method: Method) -> Option<f64> {
        match method {
            Method::Exact => self.c_exact,
            Method::Xproj => self.c_xproj,
            Method::Series => self.c_series,
            Method::Analytic => self.c_analytic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceSeries {
    pub alpha: f64,
    pub n_max: usize,
    pub tail_mass: f64,
    pub config: ScanConfig,
    pub rows: Vec<ScanRow>,
}

impl ConcurrenceSeries {
    pub fn column(&self, method: Method) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.concurrence(method)).collect()
    }

    pub fn detect_peaks(&self, method: Method, threshold: f64) -> PeakReport {
        detect_peaks(&self.rows, self.alpha, method, threshold)
    }
}

struct Evaluator<'a> {
    field: &'a CoherentCoefficients,
    methods: Methods,
    kernel: Kernel,
    analytic: AnalyticParams,
}

impl Evaluator<'_> {
    fn row(&self, tau: f64) -> Result<ScanRow> {
        let mut row = ScanRow { tau, ..ScanRow::default() };

        if self.methods.needs_density() {
            let rho = match self.kernel {
                Kernel::Factorized => bell_density(self.field, tau),
                Kernel::Tensor => bell_density_tensor(self.field, tau),
            };
            let proj = x_project(&rho);
            let xc = concurrence_x(&proj.x)?;
            if self.methods.exact {
                row.c_exact = Some(concurrence_wootters(&rho)?.value);
            }
            if self.methods.xproj {
                row.c_xproj = Some(xc.value);
            }
            row.abs_z = Some(proj.x.z.norm());
            row.a = Some(proj.x.a);
            row.d = Some(proj.x.d);
            row.max_offx = Some(proj.max_off_x);
            row.trace_err = Some(rho.trace_error());
            row.branch_w_minus = xc.w_branch;
        }

        if self.methods.series {
            let s = x_elements_series_for(self.field, tau);
            let q = s.z.abs() - (s.a * s.d).max(0.0).sqrt();
            row.c_series = Some(2.0 * q.max(0.0));
            if !self.methods.needs_density() {
                row.abs_z = Some(s.z.abs());
                row.a = Some(s.a);
                row.d = Some(s.d);
            }
        }

        if self.methods.analytic {
            row.c_analytic = Some(analytic_concurrence(tau, &self.analytic));
        }
        Ok(row)
    }
}

/// Evaluates every requested method on the configured `τ` grid.
///
/// Grid points are independent; with `workers > 1` they are spread over a
/// thread pool and collected back in grid order, so the output does not
/// depend on the worker count.
pub fn run_scan(config: &ScanConfig) -> Result<ConcurrenceSeries> {
    config.validate()?;
    let field = coherent_field(config.alpha, config.tail_tolerance)?;
    let eval = Evaluator {
        field: &field,
        methods: config.methods,
        kernel: config.kernel,
        analytic: AnalyticParams::new(config.alpha).with_k_window(config.k_window),
    };
    let grid = config.grid();
    let point = |&tau: &f64| eval.row(tau).map_err(|e| e.at_tau(tau));

    let rows = if config.workers == 1 {
        grid.iter().map(point).collect::<Result<Vec<_>>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start {} workers: {e}", config.workers)))?;
        pool.install(|| grid.par_iter().map(point).collect::<Result<Vec<_>>>())?
    };

    Ok(ConcurrenceSeries {
        alpha: config.alpha,
        n_max: field.n_max(),
        tail_mass: field.tail_mass(),
        config: config.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_parse_and_print() {
        let m: Methods = "exact,analytic".parse().unwrap();
        assert!(m.exact && m.analytic && !m.xproj && !m.series);
        assert_eq!(m.to_string(), "exact,analytic");
        assert!("exact,bogus".parse::<Methods>().is_err());
        assert!("".parse::<Methods>().is_err());
        assert_eq!(Methods::all().to_string(), "exact,xproj,series,analytic");
        assert_eq!(Method::from_column("C_series"), Some(Method::Series));
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::new(1.0, 0.0, 1.0).validate().is_ok());
        assert!(ScanConfig::new(1.0, 1.0, 1.0).validate().is_err());
        assert!(ScanConfig::new(1.0, -1.0, 1.0).validate().is_err());
        assert!(ScanConfig::new(1.0, 0.0, 1.0).with_steps(1).validate().is_err());
        assert!(ScanConfig::new(-1.0, 0.0, 1.0).validate().is_err());
        assert!(ScanConfig::new(1.0, 0.0, 1.0).with_workers(0).validate().is_err());
        let vac = ScanConfig::new(0.0, 0.0, 1.0);
        assert!(!vac.methods.analytic);
        assert!(vac.clone().with_methods(Methods::all()).validate().is_err());
    }

    #[test]
    fn grid_is_monotone_and_exact_at_ends() {
        let c = ScanConfig::new(1.0, 0.5, 3.2).with_steps(65);
        let g = c.grid();
        assert_eq!(g.len(), 65);
        assert_eq!(g[0], 0.5);
        assert_eq!(g[64], 3.2);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(default_steps(0.0, 200.0), 4001);
    }

    #[test]
    fn vacuum_scan_is_cos_squared() {
        let c = ScanConfig::new(0.0, 0.0, std::f64::consts::PI).with_steps(101).with_methods(Methods::only(Method::Exact));
        let s = run_scan(&c).unwrap();
        assert_eq!(s.rows.len(), 101);
        for r in &s.rows {
            assert!((r.c_exact.unwrap() - r.tau.cos().powi(2)).abs() < 1e-9, "tau={}", r.tau);
            assert!(r.c_xproj.is_none() && r.c_analytic.is_none());
        }
    }

    #[test]
    fn absent_methods_stay_empty() {
        let c = ScanConfig::new(2.0, 0.0, 5.0).with_steps(11).with_methods("series,analytic".parse().unwrap());
        let s = run_scan(&c).unwrap();
        for r in &s.rows {
            assert!(r.c_exact.is_none() && r.c_xproj.is_none() && r.max_offx.is_none());
            assert!(r.c_series.is_some() && r.c_analytic.is_some() && r.abs_z.is_some());
        }
    }

    #[test]
    fn kernels_agree() {
        let base = ScanConfig::new(3.0, 0.0, 40.0).with_steps(41).with_methods("exact,xproj".parse().unwrap());
        let f = run_scan(&base).unwrap();
        let t = run_scan(&base.clone().with_kernel(Kernel::Tensor)).unwrap();
        for (a, b) in f.rows.iter().zip(&t.rows) {
            assert!((a.c_exact.unwrap() - b.c_exact.unwrap()).abs() < 1e-11);
            assert!((a.c_xproj.unwrap() - b.c_xproj.unwrap()).abs() < 1e-11);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let base = ScanConfig::new(4.0, 0.0, 30.0).with_steps(97);
        let one = run_scan(&base).unwrap();
        let many = run_scan(&base.clone().with_workers(4)).unwrap();
        assert_eq!(one.rows, many.rows);
    }

    #[test]
    fn series_column_tracks_z_branch_of_projection() {
        let c = ScanConfig::new(5.0, 0.0, 60.0).with_steps(121);
        let s = run_scan(&c).unwrap();
        for r in &s.rows {
            let q = r.abs_z.unwrap() - (r.a.unwrap() * r.d.unwrap()).sqrt();
            let z_only = 2.0 * q.max(0.0);
            assert!((r.c_series.unwrap() - z_only).abs() < 1e-8, "tau={}", r.tau);
            if r.branch_w_minus.unwrap() <= q {
                assert!((r.c_series.unwrap() - r.c_xproj.unwrap()).abs() < 1e-8);
            }
        }
    }
}
