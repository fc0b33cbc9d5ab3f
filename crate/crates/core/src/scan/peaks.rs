use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Method, ScanRow};
use crate::analytic::{peak_height, revival_center};

/// Local maxima at or below this concurrence are ignored.
pub const DEFAULT_PEAK_THRESHOLD: f64 = 0.05;

/// Values below this count as zero when counting zero crossings.
pub const ZERO_LEVEL: f64 = 1e-6;

/// Half-width of the window around a revival centre in which zero
/// crossings are counted.
const CROSSING_HALF_WIDTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectedPeak {
    pub tau: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevivalPeak {
    pub k: usize,
    pub tau: f64,
    pub height: f64,
    pub predicted_center: f64,
    pub predicted_height: f64,
    /// The predicted envelope is negative at this `k`.
    pub extinguished: bool,
    pub center_error: f64,
    /// `|height − H_k| / H_k`; absent when `H_k` is zero.
    pub relative_height_error: Option<f64>,
    /// Zero crossings within ±2 of the predicted centre, per column present.
    pub zero_crossings: BTreeMap<String, usize>,
}

/// Middle half of the stretch between revivals `k` and `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollapseWindow {
    pub k: usize,
    pub start: f64,
    pub end: f64,
    /// Largest value of the column inside the window.
    pub max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    pub method: Method,
    pub alpha: f64,
    pub threshold: f64,
    /// Maxima closer than this are merged into one peak.
    pub merge_window: f64,
    /// The lobe around `τ = 0`.
    pub initial_lobe: Option<DetectedPeak>,
    pub revivals: Vec<RevivalPeak>,
    /// Peaks that could not be paired with a revival index.
    pub unpaired: Vec<DetectedPeak>,
    pub collapse_windows: Vec<CollapseWindow>,
    pub notes: Vec<String>,
}

impl PeakReport {
    pub fn revival(&self, k: usize) -> Option<&RevivalPeak> {
        self.revivals.iter().find(|r| r.k == k)
    }
}

fn local_maxima(rows: &[ScanRow], method: Method, threshold: f64) -> Vec<DetectedPeak> {
    let vals: Vec<Option<f64>> = rows.iter().map(|r| r.concurrence(method)).collect();
    let at = |i: usize| vals[i].unwrap_or(f64::NEG_INFINITY);
    let mut out = Vec::new();
    for i in 0..rows.len() {
        let Some(v) = vals[i] else { continue };
        if v <= threshold {
            continue;
        }
        let left_ok = i == 0 || v > at(i - 1);
        let right_ok = i + 1 == rows.len() || v >= at(i + 1);
        if left_ok && right_ok {
            out.push(DetectedPeak { tau: rows[i].tau, height: v });
        }
    }
    out
}

/// Groups maxima whose distance to the first member of their group is at
/// most `window`, keeping the highest of each group.
fn merge(peaks: Vec<DetectedPeak>, window: f64) -> Vec<DetectedPeak> {
    let mut out: Vec<DetectedPeak> = Vec::new();
    let mut anchor = f64::NEG_INFINITY;
    for p in peaks {
        match out.last_mut() {
            Some(best) if p.tau - anchor <= window => {
                if p.height > best.height {
                    *best = p;
                }
            }
            _ => {
                anchor = p.tau;
                out.push(p);
            }
        }
    }
    out
}

/// Number of transitions between zero (`< ZERO_LEVEL`) and non-zero values
/// of `method` over `|τ − center| ≤ half_width`.
pub fn zero_crossings(rows: &[ScanRow], method: Method, center: f64, half_width: f64) -> usize {
    let states: Vec<bool> = rows
        .iter()
        .filter(|r| (r.tau - center).abs() <= half_width)
        .filter_map(|r| r.concurrence(method))
        .map(|v| v < ZERO_LEVEL)
        .collect();
    states.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Collapse windows lying entirely inside the scanned range, with the
/// maximum of `method` over each.
pub fn collapse_windows(rows: &[ScanRow], alpha: f64, method: Method) -> Vec<CollapseWindow> {
    let (Some(first), Some(last)) = (rows.first(), rows.last()) else { return Vec::new() };
    if alpha <= 0.0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 0.. {
        let start = revival_center(k, alpha) + PI * alpha / 2.0;
        let end = revival_center(k, alpha) + 3.0 * PI * alpha / 2.0;
        if end > last.tau {
            break;
        }
        if start < first.tau {
            continue;
        }
        let max = rows
            .iter()
            .filter(|r| r.tau >= start && r.tau <= end)
            .filter_map(|r| r.concurrence(method))
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
        out.push(CollapseWindow { k, start, end, max });
    }
    out
}

/// Finds revival peaks of `method` and pairs them with the predicted
/// centres `2πkα` and heights `H_k`.
pub fn detect_peaks(rows: &[ScanRow], alpha: f64, method: Method, threshold: f64) -> PeakReport {
    let merge_window = PI * alpha / 2.0;
    let mut report = PeakReport {
        method,
        alpha,
        threshold,
        merge_window,
        initial_lobe: None,
        revivals: Vec::new(),
        unpaired: Vec::new(),
        collapse_windows: collapse_windows(rows, alpha, method),
        notes: Vec::new(),
    };
    if rows.iter().all(|r| r.concurrence(method).is_none()) {
        report.notes.push(format!("column {} is empty", method.column()));
        return report;
    }

    let peaks = merge(local_maxima(rows, method, threshold), merge_window);
    if alpha == 0.0 {
        report.notes.push("vacuum field: no revival structure, maxima recur with period pi".into());
        report.unpaired = peaks;
        return report;
    }

    let present: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|&m| rows.iter().any(|r| r.concurrence(m).is_some()))
        .collect();

    for p in peaks {
        let k = (p.tau / (2.0 * PI * alpha)).round() as usize;
        if k == 0 {
            match report.initial_lobe {
                Some(best) if best.height >= p.height => report.unpaired.push(p),
                Some(best) => {
                    report.unpaired.push(best);
                    report.initial_lobe = Some(p);
                }
                None => report.initial_lobe = Some(p),
            }
            continue;
        }
        if let Some(existing) = report.revivals.iter().position(|r| r.k == k) {
            let old = &report.revivals[existing];
            if old.height >= p.height {
                report.unpaired.push(p);
                continue;
            }
            report.unpaired.push(DetectedPeak { tau: old.tau, height: old.height });
            report.revivals.remove(existing);
        }
        let center = revival_center(k, alpha);
        let h = peak_height(k, alpha);
        let zero_crossings = present
            .iter()
            .map(|&m| (m.column().to_string(), zero_crossings(rows, m, center, CROSSING_HALF_WIDTH)))
            .collect();
        report.revivals.push(RevivalPeak {
            k,
            tau: p.tau,
            height: p.height,
            predicted_center: center,
            predicted_height: h.value,
            extinguished: h.extinguished,
            center_error: (p.tau - center).abs(),
            relative_height_error: (h.value > 0.0).then(|| (p.height - h.value).abs() / h.value),
            zero_crossings,
        });
    }
    report.revivals.sort_by_key(|r| r.k);
    report.unpaired.sort_by(|a, b| a.tau.total_cmp(&b.tau));
    if alpha < crate::analytic::VALIDITY_ALPHA {
        report.notes.push(format!("alpha = {alpha} is below the strong-field regime; predicted heights are rough"));
    }
    report
}
