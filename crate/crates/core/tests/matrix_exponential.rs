//! Independent check of the propagator: build `H = a†σ− + σ+a` densely for
//! one site, exponentiate it by scaling and squaring, and compare the
//! resulting two-atom reduced matrix with the library routes.

#![allow(clippy::needless_range_loop)]

use jc_revival::density::{bell_density, bell_density_tensor, x_project, TwoQubitDensity};
use jc_revival::entanglement::concurrence_wootters;
use jc_revival::fock::{coherent_field, CoherentCoefficients};
use jc_revival::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Dense = Vec<Vec<C64>>;

fn zeros(n: usize) -> Dense {
    vec![vec![C64::new(0.0, 0.0); n]; n]
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Single-site basis `(level, n)` → `level·dim + n`, excited level first.
fn hamiltonian(dim: usize) -> Dense {
    let mut h = zeros(2 * dim);
    for n in 0..dim - 1 {
        // |e, n⟩ ↔ |g, n + 1⟩ with strength √(n + 1)
        let g = ((n + 1) as f64).sqrt();
        h[n][dim + n + 1] = C64::new(g, 0.0);
        h[dim + n + 1][n] = C64::new(g, 0.0);
    }
    h
}

/// `exp(−i H τ)` by scaling and squaring a Taylor series.
fn propagator(h: &Dense, tau: f64) -> Dense {
    let n = h.len();
    let norm = h.iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max) * tau;
    let squarings = norm.log2().ceil().max(0.0) as i32 + 1;
    let scale = tau / 2f64.powi(squarings);
    let step: Dense = h.iter().map(|r| r.iter().map(|x| x * C64::new(0.0, -scale)).collect()).collect();
    let mut out = zeros(n);
    let mut term = zeros(n);
    for i in 0..n {
        out[i][i] = C64::new(1.0, 0.0);
        term[i][i] = C64::new(1.0, 0.0);
    }
    for k in 1..30 {
        term = mul(&term, &step);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                out[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        out = mul(&out, &out);
    }
    out
}

fn apply(u: &Dense, v: &[C64]) -> Vec<C64> {
    u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Reduced matrix of `(|e,α⟩|g,α⟩ + |g,α⟩|e,α⟩)/√2` after `U ⊗ U`.
fn reference_density(field: &CoherentCoefficients, tau: f64) -> TwoQubitDensity {
    let dim = field.n_max() + 2;
    let u = propagator(&hamiltonian(dim), tau);
    let mut excited = vec![C64::new(0.0, 0.0); 2 * dim];
    let mut ground = vec![C64::new(0.0, 0.0); 2 * dim];
    for (n, &c) in field.coeffs().iter().enumerate() {
        excited[n] = C64::new(c, 0.0);
        ground[dim + n] = C64::new(c, 0.0);
    }
    let ue = apply(&u, &excited);
    let ug = apply(&u, &ground);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // ψ[a, n; b, m] = (ue[a n] ug[b m] + ug[a n] ue[b m]) / √2
    let psi = |a: usize, n: usize, b: usize, m: usize| {
        let (i, j) = (a * dim + n, b * dim + m);
        (ue[i] * ug[j] + ug[i] * ue[j]) * r
    };
    let mut rho = [[C64::new(0.0, 0.0); 4]; 4];
    for s in 0..4 {
        for t in 0..4 {
            let (a, b, a2, b2) = (s / 2, s % 2, t / 2, t % 2);
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..dim {
                for m in 0..dim {
                    acc += psi(a, n, b, m) * psi(a2, n, b2, m).conj();
                }
            }
            rho[s][t] = acc;
        }
    }
    TwoQubitDensity::from_matrix(rho, tau)
}

#[test]
fn propagator_is_unitary() {
    let u = propagator(&hamiltonian(12), 7.3);
    let n = u.len();
    for i in 0..n {
        for j in 0..n {
            let dot: C64 = (0..n).map(|k| u[k][i].conj() * u[k][j]).sum();
            let id = if i == j { 1.0 } else { 0.0 };
            assert!((dot - id).norm() < 1e-10);
        }
    }
}

#[test]
fn library_matches_dense_exponential() {
    let field = coherent_field(3.0, 1e-12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10 {
        let tau = rng.gen_range(0.0..60.0);
        let reference = reference_density(&field, tau);
        let fast = bell_density(&field, tau);
        let tensor = bell_density_tensor(&field, tau);
        assert!(reference.max_abs_diff(&fast) < 1e-8, "tau={tau}: {}", reference.max_abs_diff(&fast));
        assert!(reference.max_abs_diff(&tensor) < 1e-8, "tau={tau}");
        let c_ref = concurrence_wootters(&reference).unwrap().value;
        let c = concurrence_wootters(&fast).unwrap().value;
        assert!((c - c_ref).abs() < 1e-8, "tau={tau}");
    }
}

#[test]
fn vacuum_reference_is_cos_squared() {
    let field = coherent_field(0.0, 1e-12).unwrap();
    for tau in [0.4, 1.3, 2.9] {
        let c = concurrence_wootters(&reference_density(&field, tau)).unwrap().value;
        assert!((c - f64::cos(tau).powi(2)).abs() < 1e-10);
    }
}

/// The coherences outside the X pattern are a property of the dynamics, not
/// of the library's contraction: the dense reference shows them too.
#[test]
fn reference_has_large_off_x_coherences() {
    let field = coherent_field(3.0, 1e-12).unwrap();
    let reference = x_project(&reference_density(&field, 0.2));
    let fast = x_project(&bell_density(&field, 0.2));
    assert!(reference.max_off_x > 0.1, "{}", reference.max_off_x);
    assert!((reference.max_off_x - fast.max_off_x).abs() < 1e-10);
}
