//! Two-qubit concurrence.
//!
//! [`concurrence_wootters`] is the general spin-flip construction and serves
//! as the reference; [`concurrence_x`] is the closed form valid for X-shaped
//! matrices.

mod eigen;
mod jacobi;

pub use eigen::{eigenvalues, eigenvalues_4x4};
pub use jacobi::{hermitian_eigen, singular_values};

use serde::{Deserialize, Serialize};

use crate::density::{Matrix4, TwoQubitDensity, XState};
use crate::{Error, Result, C64};

/// Negative populations below this are treated as an invalid state.
pub const POPULATION_TOLERANCE: f64 = 1e-8;

/// Largest negative eigenvalue of `ρ` accepted as rounding noise; anything
/// smaller in magnitude is clamped to 0.
pub const EIGEN_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceValue {
    pub value: f64,
    /// `|z| − √(ad)`, present for X-formula evaluations.
    pub z_branch: Option<f64>,
    /// `|w| − √(bc)`, present for X-formula evaluations.
    pub w_branch: Option<f64>,
    /// `λ1 ≥ λ2 ≥ λ3 ≥ λ4`, present for spin-flip evaluations.
    pub lambdas: Option<[f64; 4]>,
}

impl ConcurrenceValue {
    /// Concurrence from the `|z| − √(ad)` branch alone.
    pub fn z_branch_value(&self) -> Option<f64> {
        self.z_branch.map(|q| 2.0 * q.max(0.0))
    }

    /// True when the `w` branch is the larger of the two X branches and
    /// positive.
    pub fn w_branch_dominates(&self) -> bool {
        match (self.z_branch, self.w_branch) {
            (Some(z), Some(w)) => w > 0.0 && w > z,
            _ => false,
        }
    }
}

/// `C = 2·max{0, |z| − √(ad), |w| − √(bc)}`
pub fn concurrence_x(x: &XState) -> Result<ConcurrenceValue> {
    if let Some(p) = x.populations().iter().find(|&&p| p < -POPULATION_TOLERANCE) {
        return Err(Error::InvalidState(format!("negative population {p:e}")));
    }
    let sqrt_pos = |v: f64| v.max(0.0).sqrt();
    let z_branch = x.z.norm() - sqrt_pos(x.a * x.d);
    let w_branch = x.w.norm() - sqrt_pos(x.b * x.c);
    Ok(ConcurrenceValue {
        value: 2.0 * z_branch.max(w_branch).max(0.0),
        z_branch: Some(z_branch),
        w_branch: Some(w_branch),
        lambdas: None,
    })
}

/// σy⊗σy is real and anti-diagonal: entry `(i, 3 − i)` is `SPIN_FLIP_SIGN[i]`.
const SPIN_FLIP_SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`
pub fn spin_flip(rho: &Matrix4) -> Matrix4 {
    let mut out = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = rho[3 - i][3 - j].conj() * (SPIN_FLIP_SIGN[i] * SPIN_FLIP_SIGN[j]);
        }
    }
    out
}


/// Wootters concurrence `max{0, λ1 − λ2 − λ3 − λ4}` with `λi` the
/// decreasing square roots of the eigenvalues of `ρ ρ̃`.
///
/// The `λi` are computed as the singular values of `Wᵀ (σy⊗σy) W` where
/// `ρ = W W†`. This is the same spectrum, but it avoids square roots of
/// nearly vanishing eigenvalues, which would turn rounding noise of order
/// `1e-16` into errors of order `1e-8` for pure or nearly pure states.
pub fn concurrence_wootters(rho: &TwoQubitDensity) -> Result<ConcurrenceValue> {
    let (ev, v) = hermitian_eigen(rho.matrix());
    if let Some(e) = ev.iter().find(|&&e| e < -EIGEN_RESIDUAL) {
        return Err(Error::Numerical(format!("density matrix has eigenvalue {e:e}")));
    }
    // W = V √D
    let mut w = v;
    for row in w.iter_mut() {
        for (x, e) in row.iter_mut().zip(ev) {
            *x *= e.max(0.0).sqrt();
        }
    }
    let mut x = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            x[i][j] = (0..4).map(|k| w[k][i] * w[3 - k][j] * SPIN_FLIP_SIGN[k]).sum();
        }
    }
    let mut lambdas = singular_values(&x);
    if lambdas.iter().any(|l| !l.is_finite()) {
        return Err(Error::Numerical("non-finite spin-flip singular value".into()));
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceValue { value, z_branch: None, w_branch: None, lambdas: Some(lambdas) })
}
