//! Saddle-point closed forms for strong coherent fields.
//!
//! With `√(n+1) ≈ √n + 1/(2√n)` and Stirling's formula the photon sums turn
//! into Gaussian integrals around `n = α²`. What comes out is a collapse
//! term plus one Gaussian revival packet per `k ≥ 1`, centred on
//! `τ = 2πkα`, each modulated at the Rabi-scale frequency `4α`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::C64;

/// Smallest `α` for which the closed forms are expected to be accurate.
pub const VALIDITY_ALPHA: f64 = 10.0;

pub const DEFAULT_K_WINDOW: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticParams {
    pub alpha: f64,
    /// Half-width of the revival-index window summed around the nearest
    /// revival.
    pub k_window: usize,
}

impl AnalyticParams {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, k_window: DEFAULT_K_WINDOW }
    }

    pub fn with_k_window(mut self, k_window: usize) -> Self {
        self.k_window = k_window;
        self
    }

    /// False when `α` lies below the regime the saddle-point step assumes.
    pub fn in_validity_domain(&self) -> bool {
        self.alpha >= VALIDITY_ALPHA
    }
}

/// `I(τ) ≅ exp(−τ²/32α⁴) · e^{iτ/2α}`
pub fn saddle_integral(tau: f64, alpha: f64) -> C64 {
    let a4 = alpha.powi(4);
    C64::from_polar((-tau * tau / (32.0 * a4)).exp(), tau / (2.0 * alpha))
}

/// `τ = 2πkα`
pub fn revival_center(k: usize, alpha: f64) -> f64 {
    2.0 * PI * k as f64 * alpha
}

/// Revival index whose centre is nearest to `tau`.
pub fn nearest_revival(tau: f64, alpha: f64) -> usize {
    (tau / (2.0 * PI * alpha)).round().max(0.0) as usize
}

/// Contribution of revival packet `k` to `Q(τ)`.
fn revival_term(tau: f64, alpha: f64, k: usize) -> f64 {
    let kf = k as f64;
    let shift = tau - revival_center(k, alpha);
    (-2.0 * shift * shift / (1.0 + PI * PI * kf * kf)).exp() * (4.0 * alpha * shift).cos() / (2.0 * PI * kf)
}

/// Analytic `Q(τ) = |z| − √(ad)`.
///
/// The revival sum keeps `k ∈ [max(1, k0 − w), k0 + w]` around the nearest
/// revival `k0`; packets further away are exponentially small.
pub fn q_of_t(tau: f64, params: &AnalyticParams) -> f64 {
    let alpha = params.alpha;
    let a4 = alpha.powi(4);
    let collapse = 0.25 * ((-tau * tau / (16.0 * a4)).exp() - 1.0 + (-tau * tau / 2.0).exp() * (4.0 * alpha * tau).cos());
    let k0 = nearest_revival(tau, alpha);
    let lo = k0.saturating_sub(params.k_window).max(1);
    let hi = k0 + params.k_window;
    collapse + (lo..=hi).map(|k| revival_term(tau, alpha, k)).sum::<f64>()
}

/// `C(τ) = 2·max{0, Q(τ)}`
pub fn analytic_concurrence(tau: f64, params: &AnalyticParams) -> f64 {
    2.0 * q_of_t(tau, params).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakHeight {
    /// Height clamped at zero.
    pub value: f64,
    /// Raw envelope value, possibly negative.
    pub unclamped: f64,
    /// The envelope has dropped below zero: no revival survives.
    pub extinguished: bool,
}

/// Height `H_k` of revival `k`, from `2H_k = 2/(πk) − 1 + exp(−τ²/16α⁴)`
/// evaluated at the revival centre.
pub fn peak_height(k: usize, alpha: f64) -> PeakHeight {
    let tau = revival_center(k, alpha);
    let unclamped = 0.5 * (2.0 / (PI * k as f64) - 1.0 + (-tau * tau / (16.0 * alpha.powi(4))).exp());
    PeakHeight { value: unclamped.max(0.0), unclamped, extinguished: unclamped < 0.0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saddle_integral_basics() {
        assert_eq!(saddle_integral(0.0, 10.0), C64::new(1.0, 0.0));
        let mut prev = 1.0;
        for i in 1..50 {
            let tau = 10.0 * i as f64;
            let m = saddle_integral(tau, 10.0).norm();
            assert!((m - (-tau * tau / 320_000.0f64).exp()).abs() < 1e-15);
            assert!(m < prev);
            prev = m;
        }
        assert_eq!(saddle_integral(-30.0, 7.0).norm(), saddle_integral(30.0, 7.0).norm());
    }

    #[test]
    fn q_at_first_revival_center() {
        let alpha: f64 = 10.0;
        let q = q_of_t(revival_center(1, alpha), &AnalyticParams::new(alpha));
        let expected = 0.25 * ((-PI * PI / (4.0 * alpha * alpha)).exp() - 1.0) + 1.0 / (2.0 * PI);
        assert!((q - expected).abs() < 1e-12);
        assert!((q - 0.15306).abs() < 1e-5);
        let c = analytic_concurrence(20.0 * PI, &AnalyticParams::new(alpha));
        assert!((c - 0.3061).abs() < 1e-4);
    }

    #[test]
    fn collapse_region_is_negative() {
        let p = AnalyticParams::new(10.0);
        assert!(q_of_t(30.0, &p) < 0.0);
        assert_eq!(analytic_concurrence(30.0, &p), 0.0);
    }

    #[test]
    fn q_at_zero_is_a_quarter() {
        assert!((q_of_t(0.0, &AnalyticParams::new(10.0)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sustained_zero_between_revivals() {
        let p = AnalyticParams::new(10.0);
        let mut tau = 15.0;
        while tau < 47.0 {
            assert_eq!(analytic_concurrence(tau, &p), 0.0, "tau={tau}");
            tau += 0.01;
        }
    }

    #[test]
    fn revival_centers() {
        assert!((revival_center(1, 10.0) - 62.831_853_071_795_86).abs() < 1e-12);
        assert!((revival_center(2, 10.0) - 40.0 * PI).abs() < 1e-12);
        assert!((revival_center(1, 5.0) - 10.0 * PI).abs() < 1e-12);
        assert_eq!(nearest_revival(70.0, 10.0), 1);
        assert_eq!(nearest_revival(1.0, 10.0), 0);
    }

    #[test]
    fn peak_heights() {
        let h1 = peak_height(1, 10.0);
        assert!((h1.value - 0.306).abs() < 1e-3);
        assert!(!h1.extinguished);
        let heights: Vec<f64> = (1..=5).map(|k| peak_height(k, 10.0).unclamped).collect();
        assert!(heights.windows(2).all(|w| w[1] < w[0]), "{heights:?}");
        // 2/(πk) < 1 − exp(−π²k²/4α²) once k is large enough
        let far = peak_height(20, 10.0);
        assert!(far.extinguished);
        assert_eq!(far.value, 0.0);
        assert!(far.unclamped < 0.0);
    }

    #[test]
    fn centre_value_matches_envelope() {
        let alpha = 10.0;
        for k in 1..=3 {
            let c = analytic_concurrence(revival_center(k, alpha), &AnalyticParams::new(alpha));
            let h = peak_height(k, alpha).unclamped;
            assert!((c - h).abs() < 1e-3, "k={k}: {c} vs {h}");
        }
    }

    fn max_window_drift(alpha: f64, tau_end: f64) -> f64 {
        let narrow = AnalyticParams::new(alpha);
        let wide = narrow.with_k_window(4);
        let mut worst: f64 = 0.0;
        let mut tau = 0.0;
        while tau <= tau_end {
            worst = worst.max((q_of_t(tau, &narrow) - q_of_t(tau, &wide)).abs());
            tau += 0.01;
        }
        worst
    }

    #[test]
    fn window_independence() {
        for alpha in [7.5, 10.0] {
            assert!(max_window_drift(alpha, 300.0) < 1e-10, "alpha={alpha}");
        }
        for alpha in [5.0, 6.0] {
            assert!(max_window_drift(alpha, 150.0) < 1e-10, "alpha={alpha}");
        }
    }

    /// Late packets widen like `πk/2` while their spacing stays `2πα`, so for
    /// small `α` neighbours beyond the ±2 window start to overlap. At `α = 5`
    /// this is visible well before `τ = 300`.
    #[test]
    fn window_drift_grows_for_weak_fields() {
        let drift = max_window_drift(5.0, 300.0);
        assert!(drift > 1e-10 && drift < 1e-5, "{drift}");
    }

    #[test]
    fn rabi_scale_micro_structure() {
        let p = AnalyticParams::new(10.0);
        let center = 20.0 * PI;
        let mut changes = 0;
        let mut prev = q_of_t(center - 2.0, &p).signum();
        let mut tau = center - 2.0;
        while tau <= center + 2.0 {
            let s = q_of_t(tau, &p).signum();
            if s != prev {
                changes += 1;
            }
            prev = s;
            tau += 0.001;
        }
        assert!(changes >= 4, "{changes}");
    }

    #[test]
    fn validity_flag() {
        assert!(AnalyticParams::new(10.0).in_validity_domain());
        assert!(!AnalyticParams::new(5.0).in_validity_domain());
    }
}
