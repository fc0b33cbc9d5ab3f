//! Jacobi rotations for 4×4 complex matrices: Hermitian eigendecomposition
//! and singular values. Both keep absolute accuracy near machine epsilon for
//! tiny eigenvalues and singular values, which matters when square roots of
//! them are taken afterwards.

use crate::density::Matrix4;
use crate::C64;

const MAX_SWEEPS: usize = 60;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Unitary `G` acting on the index pair `(p, q)` that diagonalises the
/// Hermitian block `[[a, b], [b*, d]]` as `G† · block · G`.
///
/// Returned as `(g_pp, g_pq, g_qp, g_qq)`.
fn rotation(a: f64, b: C64, d: f64) -> (C64, C64, C64, C64) {
    let r = b.norm();
    // phase first so the off-diagonal becomes real, then a real rotation
    let ph = if r > 0.0 { b.conj() / r } else { C64::new(1.0, 0.0) };
    let zeta = (d - a) / (2.0 * r);
    let t = if zeta.is_infinite() { 0.0 } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (C64::new(c, 0.0), C64::new(s, 0.0), -ph * s, ph * c)
}

/// Eigenvalues and eigenvectors (as columns) of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &Matrix4) -> ([f64; 4], Matrix4) {
    let mut a = *m;
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = (m[i][j] + m[j][i].conj()) * 0.5;
        }
    }
    let mut v = [[ZERO; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    let scale: f64 = a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j].norm_sqr()).sum();
        if off.sqrt() <= 1e-18 * scale || off == 0.0 {
            break;
        }
        for p in 0..3 {
            for q in p + 1..4 {
                if a[p][q].norm() == 0.0 {
                    continue;
                }
                let (gpp, gpq, gqp, gqq) = rotation(a[p][p].re, a[p][q], a[q][q].re);
                // A ← A G
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * gpp + y * gqp;
                    row[q] = x * gpq + y * gqq;
                }
                // A ← G† A
                for k in 0..4 {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = gpp.conj() * x + gqp.conj() * y;
                    a[q][k] = gpq.conj() * x + gqq.conj() * y;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p].im = 0.0;
                a[q][q].im = 0.0;
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * gpp + y * gqp;
                    row[q] = x * gpq + y * gqq;
                }
            }
        }
    }
    ([a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re], v)
}

/// Singular values of `m` by one-sided Jacobi, unsorted.
pub fn singular_values(m: &Matrix4) -> [f64; 4] {
    let mut x = *m;
    let col_dot = |x: &Matrix4, p: usize, q: usize| -> C64 { (0..4).map(|i| x[i][p].conj() * x[i][q]).sum() };
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..4 {
                let a = col_dot(&x, p, p).re;
                let d = col_dot(&x, q, q).re;
                let b = col_dot(&x, p, q);
                if b.norm() <= 1e-17 * (a * d).sqrt() || b.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let (gpp, gpq, gqp, gqq) = rotation(a, b, d);
                for row in x.iter_mut() {
                    let (u, w) = (row[p], row[q]);
                    row[p] = u * gpp + w * gqp;
                    row[q] = u * gpq + w * gqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    std::array::from_fn(|j| (0..4).map(|i| x[i][j].norm_sqr()).sum::<f64>().sqrt())
}
