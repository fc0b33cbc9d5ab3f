//! Reduced two-qubit density matrices.
//!
//! Three routes lead to the atom-atom state at a given `τ`:
//!
//! * [`partial_trace`] contracts the photon indices of a full [`JointState`],
//! * [`partial_trace_factorized`] does the same contraction site by site,
//!   which costs `O(n_max)` instead of `O(n_max²)`,
//! * [`x_elements_series`] evaluates `z`, `a` and `d` directly from the
//!   four-term double sums over photon numbers.

use serde::{Deserialize, Serialize};

use crate::dynamics::{evolve_joint, JcTable, JointState, Level, SitePair, TwoQubitPure};
use crate::entanglement::hermitian_eigen;
use crate::fock::{coherent_field, CoherentCoefficients};
use crate::{Error, Result, C64};

pub type Matrix4 = [[C64; 4]; 4];

/// Basis index of `|s_A s_B⟩` in the order `ee, eg, ge, gg`.
#[inline]
pub fn basis_index(a: Level, b: Level) -> usize {
    2 * a.index() + b.index()
}

pub const HERMITICITY_TOLERANCE: f64 = 1e-10;
pub const TRACE_TOLERANCE: f64 = 1e-8;
pub const POSITIVITY_TOLERANCE: f64 = 1e-9;

/// 4×4 reduced density matrix in the basis `|ee⟩, |eg⟩, |ge⟩, |gg⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity {
    rho: Matrix4,
    tau: f64,
}

impl TwoQubitDensity {
    /// Wraps a matrix without checking it; see [`TwoQubitDensity::validate`].
    pub fn from_matrix(rho: Matrix4, tau: f64) -> Self {
        Self { rho, tau }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.rho
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.rho[i][j]
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.rho[i][i]).sum()
    }

    pub fn trace_error(&self) -> f64 {
        (self.trace() - C64::new(1.0, 0.0)).norm()
    }

    /// `max |ρ − ρ†|`
    pub fn hermiticity_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                err = err.max((self.rho[i][j] - self.rho[j][i].conj()).norm());
            }
        }
        err
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        if self.rho.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("density matrix has non-finite entries".into()));
        }
        let (ev, _) = hermitian_eigen(&self.rho);
        Ok(ev.iter().copied().fold(f64::INFINITY, f64::min))
    }

    /// Checks hermiticity, unit trace and positivity at the module tolerances.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm >= HERMITICITY_TOLERANCE {
            return Err(Error::InvalidState(format!("density matrix not Hermitian (deviation {herm:e})")));
        }
        let tr = self.trace_error();
        if tr >= TRACE_TOLERANCE {
            return Err(Error::InvalidState(format!("density matrix trace off by {tr:e}")));
        }
        let min = self.min_eigenvalue()?;
        if min <= -POSITIVITY_TOLERANCE {
            return Err(Error::InvalidState(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Swaps the roles of atoms A and B.
    pub fn swap_sites(&self) -> Self {
        const P: [usize; 4] = [0, 2, 1, 3];
        let mut out = self.rho;
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = self.rho[P[i]][P[j]];
            }
        }
        Self { rho: out, tau: self.tau }
    }

    /// Largest entrywise difference from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.rho[i][j] - other.rho[i][j]).norm());
            }
        }
        d
    }
}

/// Photon partial trace of the full joint state.
pub fn partial_trace(state: &JointState) -> TwoQubitDensity {
    let mut rho = [[C64::new(0.0, 0.0); 4]; 4];
    let configs = [
        (Level::Excited, Level::Excited),
        (Level::Excited, Level::Ground),
        (Level::Ground, Level::Excited),
        (Level::Ground, Level::Ground),
    ];
    for (i, &(a, b)) in configs.iter().enumerate() {
        let row = state.block(a, b);
        for (j, &(c, d)) in configs.iter().enumerate().skip(i) {
            let col = state.block(c, d);
            let v: C64 = row.iter().zip(col).map(|(x, y)| x * y.conj()).sum();
            rho[i][j] = v;
            rho[j][i] = v.conj();
        }
        rho[i][i].im = 0.0;
    }
    TwoQubitDensity { rho, tau: state.tau() }
}

/// Overlaps `G[i][k][s][t] = Σ_n φ^i_s(n) conj(φ^k_t(n))` of one site, for
/// initial levels `i, k` and final levels `s, t`.
type SiteGram = [[[[C64; 2]; 2]; 2]; 2];

fn site_gram(pair: &SitePair) -> SiteGram {
    let mut g = [[[[C64::new(0.0, 0.0); 2]; 2]; 2]; 2];
    for i in Level::BOTH {
        for k in Level::BOTH {
            for s in Level::BOTH {
                for t in Level::BOTH {
                    let x = pair.from_level(i).component(s);
                    let y = pair.from_level(k).component(t);
                    g[i.index()][k.index()][s.index()][t.index()] =
                        x.iter().zip(y).map(|(p, q)| p * q.conj()).sum();
                }
            }
        }
    }
    g
}

/// Reduced density matrix at `tau` from single-site evolutions.
///
/// The joint state is `Σ β_ij φ_A^i ⊗ φ_B^j`, so the photon trace factors
/// into per-site overlaps and never materializes the `(n, m)` tensor.
pub fn partial_trace_factorized(
    initial: &TwoQubitPure,
    field_a: &CoherentCoefficients,
    field_b: &CoherentCoefficients,
    tau: f64,
) -> TwoQubitDensity {
    let table = JcTable::new(tau, field_a.n_max().max(field_b.n_max()) + 3);
    let gram_a = site_gram(&SitePair::evolve(field_a, &table));
    let gram_b = if std::ptr::eq(field_a, field_b) || field_a == field_b {
        gram_a
    } else {
        site_gram(&SitePair::evolve(field_b, &table))
    };

    let mut rho = [[C64::new(0.0, 0.0); 4]; 4];
    for sa in Level::BOTH {
        for sb in Level::BOTH {
            for ta in Level::BOTH {
                for tb in Level::BOTH {
                    let mut acc = C64::new(0.0, 0.0);
                    for i in Level::BOTH {
                        for j in Level::BOTH {
                            let bij = initial.amp(i, j);
                            if bij == C64::new(0.0, 0.0) {
                                continue;
                            }
                            for k in Level::BOTH {
                                for l in Level::BOTH {
                                    let bkl = initial.amp(k, l);
                                    if bkl == C64::new(0.0, 0.0) {
                                        continue;
                                    }
                                    acc += bij
                                        * bkl.conj()
                                        * gram_a[i.index()][k.index()][sa.index()][ta.index()]
                                        * gram_b[j.index()][l.index()][sb.index()][tb.index()];
                                }
                            }
                        }
                    }
                    rho[basis_index(sa, sb)][basis_index(ta, tb)] = acc;
                }
            }
        }
    }
    for (i, row) in rho.iter_mut().enumerate() {
        row[i].im = 0.0;
    }
    TwoQubitDensity { rho, tau }
}

/// Reduced density matrix of the Bell state in two identical coherent fields.
pub fn bell_density(field: &CoherentCoefficients, tau: f64) -> TwoQubitDensity {
    partial_trace_factorized(&TwoQubitPure::bell_psi_plus(), field, field, tau)
}

/// Same state as [`bell_density`], through the full joint tensor.
pub fn bell_density_tensor(field: &CoherentCoefficients, tau: f64) -> TwoQubitDensity {
    partial_trace(&evolve_joint(&TwoQubitPure::bell_psi_plus(), field, field, tau))
}

/// The X-form entries of a two-qubit density matrix.
///
/// `a, b, c, d` are the populations of `ee, eg, ge, gg`; `z = ρ[eg, ge]`,
/// `w = ρ[ee, gg]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub z: C64,
    pub w: C64,
}

impl XState {
    pub fn populations(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The X matrix with every other entry set to zero.
    pub fn to_matrix(&self) -> Matrix4 {
        let o = C64::new(0.0, 0.0);
        [
            [self.a.into(), o, o, self.w],
            [o, self.b.into(), self.z, o],
            [o, self.z.conj(), self.c.into(), o],
            [self.w.conj(), o, o, self.d.into()],
        ]
    }

    pub fn to_density(&self, tau: f64) -> TwoQubitDensity {
        TwoQubitDensity::from_matrix(self.to_matrix(), tau)
    }
}

/// Result of [`x_project`]: the kept entries and the size of what was
/// dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XProjection {
    pub x: XState,
    /// Largest modulus among the eight discarded off-X entries.
    pub max_off_x: f64,
}

const OFF_X: [(usize, usize); 8] = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (2, 3), (3, 1), (3, 2)];

/// Keeps the diagonal and anti-diagonal of `rho`, dropping the rest.
pub fn x_project(rho: &TwoQubitDensity) -> XProjection {
    let m = rho.matrix();
    let x = XState {
        a: m[0][0].re,
        b: m[1][1].re,
        c: m[2][2].re,
        d: m[3][3].re,
        z: m[1][2],
        w: m[0][3],
    };
    let max_off_x = OFF_X.iter().map(|&(i, j)| m[i][j].norm()).fold(0.0, f64::max);
    XProjection { x, max_off_x }
}

/// `z`, `a`, `d` from the photon-number series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesElements {
    /// Real for this initial condition; its modulus enters the concurrence.
    pub z: f64,
    pub a: f64,
    pub d: f64,
}

/// Series elements for coherent amplitude `alpha`, truncated at `n_max`
/// (amplitudes renormalized).
pub fn x_elements_series(alpha: f64, tau: f64, n_max: usize) -> Result<SeriesElements> {
    let field = crate::fock::coherent_coefficients(alpha, n_max, true)?;
    Ok(x_elements_series_for(&field, tau))
}

/// Same as [`x_elements_series`] with the truncation chosen by tail mass.
pub fn x_elements_series_tol(alpha: f64, tau: f64, tail_tolerance: f64) -> Result<SeriesElements> {
    let field = coherent_field(alpha, tail_tolerance)?;
    Ok(x_elements_series_for(&field, tau))
}

/// Evaluates the four-term double sums for `z`, `a` and `d`.
///
/// Every term is a product of an `n`-factor and an `m`-factor, and both
/// cavities hold the same field, so each double sum is a product of two
/// single sums. `A_k = 0` for `k < 0` and `k > n_max`.
pub fn x_elements_series_for(field: &CoherentCoefficients, tau: f64) -> SeriesElements {
    let top = field.n_max() as isize;
    let table = JcTable::new(tau, field.n_max() + 4);
    let amp = |k: isize| field.get(k);
    let c = |k: isize| table.c(k);
    let s = |k: isize| table.s(k);
    let sum = |f: &dyn Fn(isize) -> f64| -> f64 { (0..=top).map(f).sum() };

    // z
    let z1 = sum(&|n| amp(n) * amp(n) * c(n) * c(n + 1));
    let z2n = sum(&|n| amp(n) * amp(n - 1) * s(n) * c(n + 1));
    let z2m = sum(&|m| amp(m) * amp(m + 1) * c(m) * s(m + 1));
    let z3n = sum(&|n| amp(n) * amp(n - 2) * s(n) * s(n - 1));
    let z3m = sum(&|m| amp(m) * amp(m + 2) * s(m + 1) * s(m + 2));
    let z4n = sum(&|n| amp(n) * amp(n - 1) * s(n) * c(n - 1));
    let z4m = sum(&|m| amp(m) * amp(m + 1) * s(m + 1) * c(m + 2));
    let z = 0.5 * (z1 * z1 - z2n * z2m + z3n * z3m - z4n * z4m);

    // shared single sums for a and d
    let c1sq = sum(&|n| amp(n) * amp(n) * c(n + 1) * c(n + 1));
    let s1sq = sum(&|n| amp(n) * amp(n) * s(n + 1) * s(n + 1));
    let c0sq = sum(&|n| amp(n) * amp(n) * c(n) * c(n));
    let s0sq = sum(&|n| amp(n) * amp(n) * s(n) * s(n));
    let up = sum(&|n| amp(n) * amp(n + 1) * s(n + 1) * c(n + 1));
    let down = sum(&|m| amp(m) * amp(m - 1) * s(m) * c(m));

    let a = 0.5 * (c1sq * s0sq + up * down + s0sq * c1sq + down * up);
    let d = 0.5 * (s1sq * c0sq + up * down + c0sq * s1sq + down * up);

    SeriesElements { z, a, d }
}
