use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which the sweep stops.
pub const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending, eigenvectors as
/// the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi rotations.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    let herm = h.hermiticity_error();
    if herm > 1e-10 {
        return Err(Error::Input(format!("matrix is not Hermitian (deviation {herm:.3e})")));
    }
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);

    let mut sweeps = 0;
    while off_norm(&a) > JACOBI_TOL {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps (dim {n}, off-diagonal norm {:.3e})",
                off_norm(&a)
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                let babs = b.norm();
                if babs < 1e-300 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // phase e^{-i phi} makes the (p,q) block real symmetric
                let eph = (b / babs).conj();
                let zeta = (aqq - app) / (2.0 * babs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
                let g = [[Complex64::new(c, 0.0), Complex64::new(s, 0.0)], [eph * -s, eph * c]];
                // A <- A G
                for k in 0..n {
                    let (x, y) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = x * g[0][0] + y * g[1][0];
                    a[(k, q)] = x * g[0][1] + y * g[1][1];
                }
                // A <- G^dagger A
                for k in 0..n {
                    let (x, y) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = g[0][0].conj() * x + g[1][0].conj() * y;
                    a[(q, k)] = g[0][1].conj() * x + g[1][1].conj() * y;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let (x, y) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = x * g[0][0] + y * g[1][0];
                    v[(k, q)] = x * g[0][1] + y * g[1][1];
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_matrix::sample_gue;
    use crate::rng::Rng;

    #[test]
    fn diagonalizes_gue_draws() {
        let mut rng = Rng::new(4);
        for n in [1, 2, 3, 8, 20] {
            let h = sample_gue(n, &mut rng);
            let eig = hermitian_eigen(&h).unwrap();
            assert!(eig.vectors.unitarity_error() < 1e-10);
            // H v = lambda v
            let hv = h.matmul(&eig.vectors);
            for col in 0..n {
                for row in 0..n {
                    let want = eig.vectors[(row, col)] * eig.values[col];
                    assert!((hv[(row, col)] - want).norm() < 1e-9);
                }
            }
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn known_two_by_two() {
        // [[0, -i], [i, 0]] = Pauli Y, eigenvalues -1, 1
        let mut y = ComplexMatrix::zeros(2);
        y[(0, 1)] = Complex64::new(0.0, -1.0);
        y[(1, 0)] = Complex64::new(0.0, 1.0);
        let eig = hermitian_eigen(&y).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(hermitian_eigen(&m), Err(Error::Input(_))));
    }
}
