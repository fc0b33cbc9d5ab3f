//! Two remote two-level atoms, each resonantly coupled to its own
//! single-mode cavity prepared in a coherent state, starting from the Bell
//! state `(|eg⟩ + |ge⟩)/√2`.
//!
//! The crate follows the atom-atom entanglement through the collapse and
//! revival regime along several independent routes:
//!
//! * [`dynamics`]: exact Jaynes-Cummings evolution in a truncated Fock space,
//! * [`density`]: the reduced two-qubit density matrix, its X-form projection
//!   and a separate series evaluation of the X elements `z`, `a`, `d`,
//! * [`entanglement`]: Wootters concurrence and the X-state shortcut,
//! * [`analytic`]: the saddle-point closed form for `|z| - √(ad)` and the
//!   revival envelope,
//! * [`scan`]: time sweeps over all of the above plus revival detection.
//!
//! Time is always the dimensionless `τ = g·t`.

#![allow(clippy::needless_range_loop)]

pub mod analytic;
pub mod cli;
pub mod density;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod io;
pub mod scan;

pub use error::{Error, Result};

pub use num_complex::Complex64 as C64;
