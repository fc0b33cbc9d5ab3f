//! Eigenvalues of small dense complex matrices.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! complex QR sweeps (Wilkinson shift, Givens rotations) with deflation.

use crate::{Error, Result, C64};

/// Sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of a 4×4 complex matrix, in deflation order.
pub fn eigenvalues_4x4(matrix: &[[C64; 4]; 4]) -> Result<[C64; 4]> {
    let v = eigenvalues(matrix)?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// All eigenvalues of an `N×N` complex matrix.
pub fn eigenvalues<const N: usize>(matrix: &[[C64; N]; N]) -> Result<Vec<C64>> {
    if matrix.iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Numerical("eigenvalues of a matrix with non-finite entries".into()));
    }
    let mut h = *matrix;
    hessenberg(&mut h);
    let mut out = vec![C64::new(0.0, 0.0); N];
    shifted_qr(&mut h, &mut out)?;
    Ok(out)
}

fn hessenberg<const N: usize>(h: &mut [[C64; N]; N]) {
    if N < 3 {
        return;
    }
    for k in 0..N - 2 {
        let norm: f64 = (k + 1..N).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + phase·‖x‖·e1 avoids cancellation in the leading entry
        let mut v = [C64::new(0.0, 0.0); N];
        for i in k + 1..N {
            v[i] = h[i][k];
        }
        v[k + 1] += phase * norm;
        let vnorm_sqr: f64 = (k + 1..N).map(|i| v[i].norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        // H ← (I − 2vv*/v*v) H
        for j in 0..N {
            let dot: C64 = (k + 1..N).map(|i| v[i].conj() * h[i][j]).sum();
            let f = dot * (2.0 / vnorm_sqr);
            for i in k + 1..N {
                h[i][j] -= v[i] * f;
            }
        }
        // H ← H (I − 2vv*/v*v)
        for row in h.iter_mut() {
            let dot: C64 = (k + 1..N).map(|j| row[j] * v[j]).sum();
            let f = dot * (2.0 / vnorm_sqr);
            for j in k + 1..N {
                row[j] -= f * v[j].conj();
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = C64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() { l1 } else { l2 }
}

fn shifted_qr<const N: usize>(h: &mut [[C64; N]; N], out: &mut [C64]) -> Result<()> {
    let scale = h.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = N;
    let mut sweeps = 0;
    while hi > 0 {
        let last = hi - 1;
        // locate the start of the unreduced block ending at `last`
        let mut lo = last;
        while lo > 0 {
            let sub = h[lo][lo - 1].norm();
            let mut diag = h[lo][lo].norm() + h[lo - 1][lo - 1].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= eps * diag {
                h[lo][lo - 1] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == last {
            out[last] = h[last][last];
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::Numerical(format!(
                "QR iteration did not converge within {MAX_SWEEPS_PER_EIGENVALUE} sweeps"
            )));
        }

        let mu = if sweeps % 11 == 0 {
            // exceptional shift to break cycles
            let ex = h[last][last - 1].norm() + if last >= 2 { h[last - 1][last - 2].norm() } else { 0.0 };
            h[last][last] + C64::new(0.75 * ex, 0.0)
        } else {
            wilkinson_shift(h[last - 1][last - 1], h[last - 1][last], h[last][last - 1], h[last][last])
        };

        qr_sweep(h, lo, last, mu);
    }
    Ok(())
}

/// One explicit shifted QR step `H − μI = QR`, `H ← RQ + μI` on the active
/// block `lo..=hi`.
fn qr_sweep<const N: usize>(h: &mut [[C64; N]; N], lo: usize, hi: usize, mu: C64) {
    for i in lo..=hi {
        h[i][i] -= mu;
    }
    let mut rotations = [(C64::new(1.0, 0.0), C64::new(0.0, 0.0)); N];
    for k in lo..hi {
        let a = h[k][k];
        let b = h[k + 1][k];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 { (C64::new(1.0, 0.0), C64::new(0.0, 0.0)) } else { (a / r, b / r) };
        rotations[k] = (c, s);
        for j in k..=hi {
            let t1 = h[k][j];
            let t2 = h[k + 1][j];
            h[k][j] = c.conj() * t1 + s.conj() * t2;
            h[k + 1][j] = -s * t1 + c * t2;
        }
    }
    for k in lo..hi {
        let (c, s) = rotations[k];
        for row in h.iter_mut().take((k + 1).min(hi) + 1).skip(lo) {
            let t1 = row[k];
            let t2 = row[k + 1];
            row[k] = t1 * c + t2 * s;
            row[k + 1] = -t1 * s.conj() + t2 * c.conj();
        }
    }
    for i in lo..=hi {
        h[i][i] += mu;
    }
}
