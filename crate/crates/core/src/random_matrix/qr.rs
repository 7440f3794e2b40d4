use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Householder QR: returns `(Q, R)` with `Q` unitary and `R` upper triangular.
///
/// Fails when a column is numerically dependent on the previous ones.
pub fn householder_qr(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = a.dim();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for k in 0..n {
        let norm: f64 = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-13 * scale {
            return Err(Error::Numerical(format!("rank-deficient column {k} in QR")));
        }
        if k == n - 1 {
            break;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        // v = x - alpha e_k, normalized
        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // R <- (I - 2 v v^dagger) R on rows k..n
        for col in k..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * r[(k + t, col)]).sum();
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, col)] -= vi * dot * 2.0;
            }
        }
        // Q <- Q (I - 2 v v^dagger) on columns k..n
        for row in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| q[(row, k + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                q[(row, k + t)] -= dot * vi.conj() * 2.0;
            }
        }
        for i in k + 1..n {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok((q, r))
}

/// Rescales columns of `q` and rows of `r` so that `r` has a real positive
/// diagonal while `q * r` is unchanged.
pub fn fix_phases(q: &mut ComplexMatrix, r: &mut ComplexMatrix) {
    let n = q.dim();
    for k in 0..n {
        let d = r[(k, k)];
        let ph = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, k)] *= ph;
        }
        for j in 0..n {
            r[(k, j)] *= ph.conj();
        }
    }
}
