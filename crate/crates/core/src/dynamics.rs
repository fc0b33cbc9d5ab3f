//! Resonant Jaynes-Cummings evolution of the two-site system.
//!
//! Each site evolves with the interaction-picture propagator
//!
//! ```text
//! |e;n⟩ → cos(τ√(n+1)) |e;n⟩ − i sin(τ√(n+1)) |g;n+1⟩
//! |g;n⟩ → cos(τ√n)     |g;n⟩ − i sin(τ√n)     |e;n−1⟩
//! ```
//!
//! and the sites never interact, so the joint propagator is the tensor
//! product of two copies. [`evolve_joint`] builds the full amplitude tensor;
//! [`SiteState`] keeps the two sites apart, which is what the scan kernels
//! contract against.

use std::fmt;

use crate::fock::CoherentCoefficients;
use crate::C64;

/// Atomic level of a two-level atom. Index 0 is `e`, index 1 is `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Excited,
    Ground,
}

impl Level {
    pub const BOTH: [Level; 2] = [Level::Excited, Level::Ground];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Level::Excited => 0,
            Level::Ground => 1,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Excited => "e",
            Level::Ground => "g",
        })
    }
}

/// `C_n = cos(τ√n)`, `S_n = sin(τ√n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcCoefficients {
    pub c: f64,
    pub s: f64,
}

pub fn jc_coefficients(n: usize, tau: f64) -> JcCoefficients {
    let (s, c) = (tau * (n as f64).sqrt()).sin_cos();
    JcCoefficients { c, s }
}

/// `C_n` and `S_n` for `n = 0..len` at a fixed `τ`.
#[derive(Debug, Clone)]
pub struct JcTable {
    tau: f64,
    c: Vec<f64>,
    s: Vec<f64>,
}

impl JcTable {
    pub fn new(tau: f64, len: usize) -> Self {
        let (s, c) = (0..len).map(|n| {
            let k = jc_coefficients(n, tau);
            (k.s, k.c)
        }).unzip();
        Self { tau, c, s }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `C_k`; negative `k` never carries weight and reads as 1.
    #[inline]
    pub fn c(&self, k: isize) -> f64 {
        if k < 0 { 1.0 } else { self.c[k as usize] }
    }

    /// `S_k`; negative `k` reads as 0.
    #[inline]
    pub fn s(&self, k: isize) -> f64 {
        if k < 0 { 0.0 } else { self.s[k as usize] }
    }
}

/// One term `amplitude · |level; photons⟩` of a propagated site state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub level: Level,
    pub photons: usize,
    pub amplitude: C64,
}

/// Calls `deposit` for each branch of `|level; n⟩` after time `τ`, reading
/// `C`/`S` from `table`. The `|e; n−1⟩` branch of `|g; 0⟩` is skipped.
#[inline]
fn propagate_with(level: Level, n: usize, table: &JcTable, mut deposit: impl FnMut(Branch)) {
    let minus_i = C64::new(0.0, -1.0);
    match level {
        Level::Excited => {
            let k = n as isize + 1;
            deposit(Branch { level: Level::Excited, photons: n, amplitude: table.c(k).into() });
            deposit(Branch { level: Level::Ground, photons: n + 1, amplitude: minus_i * table.s(k) });
        }
        Level::Ground => {
            let k = n as isize;
            deposit(Branch { level: Level::Ground, photons: n, amplitude: table.c(k).into() });
            if n > 0 {
                deposit(Branch { level: Level::Excited, photons: n - 1, amplitude: minus_i * table.s(k) });
            }
        }
    }
}

/// Two-branch expansion of `|level; n⟩` after dimensionless time `tau`.
pub fn single_site_propagate(level: Level, n: usize, tau: f64) -> Vec<Branch> {
    let table = JcTable::new(tau, n + 2);
    let mut out = Vec::with_capacity(2);
    propagate_with(level, n, &table, |b| out.push(b));
    out
}

/// A pure two-qubit state in the basis `|ee⟩, |eg⟩, |ge⟩, |gg⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure {
    amps: [C64; 4],
}

impl TwoQubitPure {
    pub fn new(amps: [C64; 4]) -> Self {
        Self { amps }
    }

    /// `(|eg⟩ + |ge⟩)/√2`
    pub fn bell_psi_plus() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        Self { amps: [z, h, h, z] }
    }

    pub fn amps(&self) -> &[C64; 4] {
        &self.amps
    }

    #[inline]
    pub fn amp(&self, a: Level, b: Level) -> C64 {
        self.amps[2 * a.index() + b.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Amplitude tensor `ψ[s_A, s_B, n, m]` at time `tau`.
///
/// Photon indices run to one past each field truncation so the emission
/// channel `n_max → n_max + 1` always has a slot.
#[derive(Debug, Clone)]
pub struct JointState {
    psi: Vec<C64>,
    dim_a: usize,
    dim_b: usize,
    tau: f64,
}

impl JointState {
    fn zeros(dim_a: usize, dim_b: usize, tau: f64) -> Self {
        Self { psi: vec![C64::new(0.0, 0.0); 4 * dim_a * dim_b], dim_a, dim_b, tau }
    }

    #[inline]
    fn offset(&self, a: usize, b: usize, n: usize, m: usize) -> usize {
        ((2 * a + b) * self.dim_a + n) * self.dim_b + m
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Largest photon index stored for site A.
    pub fn n_max_a(&self) -> usize {
        self.dim_a - 1
    }

    pub fn n_max_b(&self) -> usize {
        self.dim_b - 1
    }

    #[inline]
    pub fn amplitude(&self, a: Level, b: Level, n: usize, m: usize) -> C64 {
        self.psi[self.offset(a.index(), b.index(), n, m)]
    }

    /// Photon-space block for atomic configuration `(a, b)`, row-major in
    /// `(n, m)`.
    pub fn block(&self, a: Level, b: Level) -> &[C64] {
        let len = self.dim_a * self.dim_b;
        let start = (2 * a.index() + b.index()) * len;
        &self.psi[start..start + len]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.psi
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Evolves `initial ⊗ |fieldA⟩ ⊗ |fieldB⟩` to time `tau`.
///
/// Every `(n, m)` component of each non-zero atomic configuration is pushed
/// through [`single_site_propagate`]-style branching at both sites; for the
/// Bell state that is 8 amplitude deposits per `(n, m)`.
pub fn evolve_joint(
    initial: &TwoQubitPure,
    field_a: &CoherentCoefficients,
    field_b: &CoherentCoefficients,
    tau: f64,
) -> JointState {
    let dim_a = field_a.n_max() + 2;
    let dim_b = field_b.n_max() + 2;
    let table = JcTable::new(tau, dim_a.max(dim_b) + 1);
    let mut state = JointState::zeros(dim_a, dim_b, tau);

    let mut branches_b: Vec<[Option<Branch>; 2]> = Vec::with_capacity(dim_b);
    for la in Level::BOTH {
        for lb in Level::BOTH {
            let beta = initial.amp(la, lb);
            if beta == C64::new(0.0, 0.0) {
                continue;
            }
            branches_b.clear();
            branches_b.extend((0..=field_b.n_max()).map(|m| collect_branches(lb, m, &table)));
            for (n, &an) in field_a.coeffs().iter().enumerate() {
                let branches_a = collect_branches(la, n, &table);
                for (m, &am) in field_b.coeffs().iter().enumerate() {
                    let weight = beta * (an * am);
                    for ba in branches_a.iter().flatten() {
                        for bb in branches_b[m].iter().flatten() {
                            let idx = state.offset(ba.level.index(), bb.level.index(), ba.photons, bb.photons);
                            state.psi[idx] += weight * ba.amplitude * bb.amplitude;
                        }
                    }
                }
            }
        }
    }
    state
}

fn collect_branches(level: Level, n: usize, table: &JcTable) -> [Option<Branch>; 2] {
    let mut out = [None, None];
    let mut i = 0;
    propagate_with(level, n, table, |b| {
        out[i] = Some(b);
        i += 1;
    });
    out
}

/// One site evolved from `|level⟩ ⊗ |field⟩`: amplitudes `φ_s(n)` for
/// `s ∈ {e, g}` and `n = 0..=n_max+1`.
#[derive(Debug, Clone)]
pub struct SiteState {
    excited: Vec<C64>,
    ground: Vec<C64>,
}

impl SiteState {
    pub fn evolve(level: Level, field: &CoherentCoefficients, table: &JcTable) -> Self {
        let dim = field.n_max() + 2;
        let mut state = Self {
            excited: vec![C64::new(0.0, 0.0); dim],
            ground: vec![C64::new(0.0, 0.0); dim],
        };
        for (n, &an) in field.coeffs().iter().enumerate() {
            propagate_with(level, n, table, |b| {
                let slot = match b.level {
                    Level::Excited => &mut state.excited[b.photons],
                    Level::Ground => &mut state.ground[b.photons],
                };
                *slot += b.amplitude * an;
            });
        }
        state
    }

    #[inline]
    pub fn component(&self, level: Level) -> &[C64] {
        match level {
            Level::Excited => &self.excited,
            Level::Ground => &self.ground,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.excited.iter().chain(&self.ground).map(|a| a.norm_sqr()).sum()
    }
}

/// Both single-site evolutions (`|e⟩` and `|g⟩` starts) of one cavity.
#[derive(Debug, Clone)]
pub struct SitePair {
    states: [SiteState; 2],
}

impl SitePair {
    pub fn evolve(field: &CoherentCoefficients, table: &JcTable) -> Self {
        Self {
            states: [
                SiteState::evolve(Level::Excited, field, table),
                SiteState::evolve(Level::Ground, field, table),
            ],
        }
    }

    #[inline]
    pub fn from_level(&self, level: Level) -> &SiteState {
        &self.states[level.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_coefficients, coherent_field};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn jc_coefficient_examples() {
        let k = jc_coefficients(0, 3.7);
        assert_eq!((k.c, k.s), (1.0, 0.0));
        let k = jc_coefficients(1, FRAC_PI_2);
        assert!(k.c.abs() < 1e-15 && (k.s - 1.0).abs() < 1e-15);
        for n in 0..50 {
            let k = jc_coefficients(n, 0.37 * n as f64 + 1.1);
            assert!((k.c * k.c + k.s * k.s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ground_vacuum_is_dark() {
        let b = single_site_propagate(Level::Ground, 0, 2.2);
        assert_eq!(b, vec![Branch { level: Level::Ground, photons: 0, amplitude: C64::new(1.0, 0.0) }]);
    }

    #[test]
    fn excited_vacuum_quarter_cycle() {
        let b = single_site_propagate(Level::Excited, 0, FRAC_PI_2);
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].level, b[0].photons), (Level::Excited, 0));
        assert!(b[0].amplitude.norm() < 1e-15);
        assert_eq!((b[1].level, b[1].photons), (Level::Ground, 1));
        assert!((b[1].amplitude - C64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn branches_are_unitary() {
        for n in 0..20 {
            for level in Level::BOTH {
                let total: f64 = single_site_propagate(level, n, 1.3 + n as f64).iter().map(|b| b.amplitude.norm_sqr()).sum();
                assert!((total - 1.0).abs() < 1e-14);
            }
        }
        let g3 = single_site_propagate(Level::Ground, 3, 0.4);
        assert_eq!((g3[1].level, g3[1].photons), (Level::Excited, 2));
    }

    #[test]
    fn identity_at_zero_time() {
        let f = coherent_field(2.0, 1e-12).unwrap();
        let s = evolve_joint(&TwoQubitPure::bell_psi_plus(), &f, &f, 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for n in 0..=f.n_max() {
            for m in 0..=f.n_max() {
                let expected = h * f.coeffs()[n] * f.coeffs()[m];
                assert!((s.amplitude(Level::Excited, Level::Ground, n, m).re - expected).abs() < 1e-16);
                assert_eq!(s.amplitude(Level::Excited, Level::Excited, n, m), C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn norm_preserved() {
        for alpha in [0.0, 1.0, 3.0, 6.0] {
            let f = coherent_field(alpha, 1e-12).unwrap();
            for tau in [0.3, 7.7, 55.0, 290.0] {
                let s = evolve_joint(&TwoQubitPure::bell_psi_plus(), &f, &f, tau);
                assert!((s.norm_sqr() - 1.0).abs() < 1e-10, "alpha={alpha} tau={tau}");
            }
        }
    }

    #[test]
    fn evolution_is_deterministic() {
        let f = coherent_field(3.0, 1e-12).unwrap();
        let a = evolve_joint(&TwoQubitPure::bell_psi_plus(), &f, &f, 12.5);
        let b = evolve_joint(&TwoQubitPure::bell_psi_plus(), &f, &f, 12.5);
        assert_eq!(a.as_slice(), b.as_slice());
    }

    #[test]
    fn vacuum_fields_closed_form() {
        let f = coherent_coefficients(0.0, 4, true).unwrap();
        for tau in [0.0, 0.4, 1.0, PI / 3.0, 2.9] {
            let s = evolve_joint(&TwoQubitPure::bell_psi_plus(), &f, &f, tau);
            let h = std::f64::consts::FRAC_1_SQRT_2;
            // |eg;00⟩ → cos τ |eg;00⟩ − i sin τ |gg;10⟩, and symmetrically
            assert!((s.amplitude(Level::Excited, Level::Ground, 0, 0) - C64::new(h * tau.cos(), 0.0)).norm() < 1e-15);
            assert!((s.amplitude(Level::Ground, Level::Ground, 1, 0) - C64::new(0.0, -h * tau.sin())).norm() < 1e-15);
            assert!((s.amplitude(Level::Ground, Level::Ground, 0, 1) - C64::new(0.0, -h * tau.sin())).norm() < 1e-15);
        }
    }

    fn fock(n: usize) -> CoherentCoefficients {
        let mut amps = vec![0.0; n + 1];
        amps[n] = 1.0;
        CoherentCoefficients::from_amplitudes(amps)
    }

    /// Fock fields `|n⟩ ⊗ |m⟩`: each of the eight deposits of the Bell state
    /// lands in its own slot, so they can be read back one by one.
    fn eight_deposits(n: usize, m: usize, tau: f64) -> Vec<((Level, Level, usize, usize), C64)> {
        let st = evolve_joint(&TwoQubitPure::bell_psi_plus(), &fock(n), &fock(m), tau);
        let mut out = Vec::new();
        for a in Level::BOTH {
            for b in Level::BOTH {
                for n in 0..=st.n_max_a() {
                    for m in 0..=st.n_max_b() {
                        let v = st.amplitude(a, b, n, m) * std::f64::consts::SQRT_2;
                        if v.norm() > 0.0 {
                            out.push(((a, b, n, m), v));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn interior_deposits_match_composed_propagators() {
        use Level::{Excited as E, Ground as G};
        let (n, m, tau) = (5usize, 3usize, 0.83);
        let t = JcTable::new(tau, n + 3);
        let c = |k: usize| t.c(k as isize);
        let s = |k: usize| t.s(k as isize);
        let i = C64::new(0.0, 1.0);
        let expected = [
            ((E, G, n, m), C64::from(c(n + 1) * c(m))),
            ((E, E, n, m - 1), -i * c(n + 1) * s(m)),
            ((G, G, n + 1, m), -i * s(n + 1) * c(m)),
            ((G, E, n + 1, m - 1), C64::from(-s(n + 1) * s(m))),
            ((G, E, n, m), C64::from(c(n) * c(m + 1))),
            ((G, G, n, m + 1), -i * c(n) * s(m + 1)),
            ((E, E, n - 1, m), -i * s(n) * c(m + 1)),
            ((E, G, n - 1, m + 1), C64::from(-s(n) * s(m + 1))),
        ];
        let got = eight_deposits(n, m, tau);
        assert_eq!(got.len(), 8);
        for (key, amp) in expected {
            let (_, v) = got.iter().find(|(k, _)| *k == key).unwrap_or_else(|| panic!("missing {key:?}"));
            assert!((v - amp).norm() < 1e-15, "{key:?}: {v} vs {amp}");
        }
    }

    /// The eight-term bracket as it appears in the literature with this
    /// initial condition, transcribed for `n = 5`, `m = 3`. Only three of its
    /// terms survive comparison with the composed propagators; the others
    /// carry shifted kets or mixed indices. The diff is pinned here so any
    /// change in the composed form shows up.
    #[test]
    fn printed_bracket_term_diff() {
        use Level::{Excited as E, Ground as G};
        let (n, m, tau) = (5usize, 3usize, 0.83);
        let t = JcTable::new(tau, n + 3);
        let c = |k: usize| t.c(k as isize);
        let s = |k: usize| t.s(k as isize);
        let i = C64::new(0.0, 1.0);
        let printed = [
            ((E, E, n, m - 1), -i * c(n + 1) * s(m)),
            ((E, G, n, m), C64::from(c(n + 1) * s(m))),
            ((G, E, n + 1, m), C64::from(-s(n + 1) * s(n))),
            ((G, G, n + 1, m), -i * s(n + 1) * c(n)),
            ((E, E, n - 1, m + 1), -i * s(n) * c(m + 1)),
            ((E, G, n - 1, m + 1), C64::from(-s(n) * s(m + 1))),
            ((G, E, n, m + 1), C64::from(c(n) * c(m + 1))),
            ((G, G, n, m + 1), -i * c(n) * s(m + 1)),
        ];
        let got = eight_deposits(n, m, tau);
        let agrees: Vec<usize> = printed
            .iter()
            .enumerate()
            .filter(|(_, (key, amp))| got.iter().any(|(k, v)| k == key && (v - amp).norm() < 1e-12))
            .map(|(idx, _)| idx + 1)
            .collect();
        assert_eq!(agrees, vec![1, 6, 8]);
    }

    #[test]
    fn site_states_factor_the_joint_state() {
        let f = coherent_field(2.5, 1e-12).unwrap();
        let tau = 9.1;
        let joint = evolve_joint(&TwoQubitPure::bell_psi_plus(), &f, &f, tau);
        let table = JcTable::new(tau, f.n_max() + 3);
        let pair = SitePair::evolve(&f, &table);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for sa in Level::BOTH {
            for sb in Level::BOTH {
                for n in 0..=joint.n_max_a() {
                    for m in 0..=joint.n_max_b() {
                        let expected = h
                            * (pair.from_level(Level::Excited).component(sa)[n] * pair.from_level(Level::Ground).component(sb)[m]
                                + pair.from_level(Level::Ground).component(sa)[n] * pair.from_level(Level::Excited).component(sb)[m]);
                        assert!((joint.amplitude(sa, sb, n, m) - expected).norm() < 1e-15);
                    }
                }
            }
        }
        assert!((pair.from_level(Level::Excited).norm_sqr() - 1.0).abs() < 1e-12);
    }
}
