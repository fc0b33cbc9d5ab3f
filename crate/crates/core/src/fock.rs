//! Coherent-state photon amplitudes and the Fock-space truncation policy.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default Poisson tail mass allowed beyond the truncation index.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

/// Smallest truncation index ever returned by [`choose_truncation`].
pub const MIN_TRUNCATION: usize = 4;

/// Physical parameters of one atom-cavity site.
///
/// Only exact resonance is modelled, so the dynamics depend on `g` alone
/// through the dimensionless time `τ = g·t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    g: f64,
    omega0: f64,
    omega: f64,
}

impl ModelParams {
    pub fn new(g: f64, omega0: f64, omega: f64) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::InvalidParameter(format!("coupling g must be positive, got {g}")));
        }
        if omega != omega0 {
            return Err(Error::InvalidParameter(format!(
                "only exact resonance is supported (omega = {omega}, omega0 = {omega0})"
            )));
        }
        Ok(Self { g, omega0, omega })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `τ = g·t`
    pub fn dimensionless_time(&self, t: f64) -> f64 {
        self.g * t
    }
}

/// Truncated amplitudes `A_n = e^{-α²/2} α^n / √n!` of a real coherent state.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentCoefficients {
    alpha: f64,
    coeffs: Vec<f64>,
    tail_mass: f64,
    renormalized: bool,
}

impl CoherentCoefficients {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Inclusive truncation index.
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `A_k`, with `A_k = 0` outside `0..=n_max`.
    #[inline]
    pub fn get(&self, k: isize) -> f64 {
        if k < 0 {
            0.0
        } else {
            self.coeffs.get(k as usize).copied().unwrap_or(0.0)
        }
    }

    /// Poisson probability discarded by the truncation, measured before any
    /// renormalization.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn is_renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Arbitrary field amplitudes, for exercising the propagators on Fock
    /// states and other non-coherent inputs.
    #[cfg(test)]
    pub(crate) fn from_amplitudes(coeffs: Vec<f64>) -> Self {
        Self { alpha: f64::NAN, coeffs, tail_mass: 0.0, renormalized: false }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "coherent amplitude must be real and non-negative, got {alpha}"
        )));
    }
    Ok(())
}

/// `ln P(n)` for a Poisson distribution of mean `alpha²`, `alpha > 0`.
fn poisson_log_pmf(alpha: f64, n: usize, ln_factorial: f64) -> f64 {
    -alpha * alpha + 2.0 * n as f64 * alpha.ln() - ln_factorial
}

/// Poisson masses `P(0..=upper)` for mean `alpha²`, evaluated in log space.
fn poisson_pmf(alpha: f64, upper: usize) -> Vec<f64> {
    if alpha == 0.0 {
        let mut p = vec![0.0; upper + 1];
        p[0] = 1.0;
        return p;
    }
    let mut ln_fact = 0.0;
    (0..=upper)
        .map(|n| {
            if n > 0 {
                ln_fact += (n as f64).ln();
            }
            poisson_log_pmf(alpha, n, ln_fact).exp()
        })
        .collect()
}

/// Upper index beyond which the Poisson(α²) mass is far below any tolerance
/// we accept.
fn pmf_horizon(alpha: f64) -> usize {
    (alpha * alpha + 20.0 * alpha + 60.0).ceil() as usize
}

/// Smallest `n_max ≥ 4` whose Poisson(α²) tail beyond `n_max` is below
/// `tail_tolerance`.
pub fn choose_truncation(alpha: f64, tail_tolerance: f64) -> Result<usize> {
    check_alpha(alpha)?;
    if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail tolerance must lie in (0, 1), got {tail_tolerance}"
        )));
    }
    let pmf = poisson_pmf(alpha, pmf_horizon(alpha));
    // Suffix sums from the far end keep small tails accurate.
    let mut tail = 0.0;
    let mut n_max = 0;
    for n in (0..pmf.len()).rev() {
        // `tail` is the mass strictly above `n` here.
        if tail >= tail_tolerance {
            n_max = n + 1;
            break;
        }
        tail += pmf[n];
    }
    Ok(n_max.max(MIN_TRUNCATION))
}

/// Closed-form truncation bound `α² + 8α + 10`, never below the floor.
pub fn fallback_truncation(alpha: f64) -> usize {
    ((alpha * alpha + 8.0 * alpha + 10.0).ceil() as usize).max(MIN_TRUNCATION)
}

/// Coherent-state amplitudes `A_0..=A_{n_max}` for real `alpha ≥ 0`.
///
/// Amplitudes are built in log space so that `n ≈ 200` does not overflow.
/// With `renormalize` the vector is rescaled to unit norm; `tail_mass`
/// always records the probability lost to truncation.
pub fn coherent_coefficients(
    alpha: f64,
    n_max: usize,
    renormalize: bool,
) -> Result<CoherentCoefficients> {
    check_alpha(alpha)?;
    let mut coeffs: Vec<f64> = poisson_pmf(alpha, n_max).into_iter().map(f64::sqrt).collect();

    let tail_mass = if alpha == 0.0 {
        0.0
    } else {
        let horizon = pmf_horizon(alpha).max(n_max + 1);
        let pmf = poisson_pmf(alpha, horizon);
        pmf[n_max + 1..].iter().rev().sum()
    };

    if renormalize {
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        coeffs.iter_mut().for_each(|c| *c /= norm);
    }

    Ok(CoherentCoefficients { alpha, coeffs, tail_mass, renormalized: renormalize })
}

/// Truncation by tail tolerance followed by renormalized amplitudes.
pub fn coherent_field(alpha: f64, tail_tolerance: f64) -> Result<CoherentCoefficients> {
    let n_max = choose_truncation(alpha, tail_tolerance)?;
    coherent_coefficients(alpha, n_max, true)
}
