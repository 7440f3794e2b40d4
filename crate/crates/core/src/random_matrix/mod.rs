//! Random matrix ensembles and the Haar output-probability law.
//!
//! Two independent routes to Haar-random unitaries: phase-fixed QR of a
//! Ginibre matrix, and GUE eigenvectors with independent random phases.

mod jacobi;
mod qr;

use std::f64::consts::{PI, SQRT_2};
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::statevector::GateMatrix;

pub use jacobi::{hermitian_eigen, HermitianEigen, JACOBI_TOL};
pub use qr::{fix_phases, householder_qr};

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Input(format!(
                "expected {} entries, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m[(c, r)] = self[(r, c)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut m = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    m.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |U^dagger U - I|` entry-wise.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        let mut err: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let t = if r == c { 1.0 } else { 0.0 };
                err = err.max((p[(r, c)] - t).norm());
            }
        }
        err
    }

    /// `max |H - H^dagger|` entry-wise.
    pub fn hermiticity_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                err = err.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        err
    }

    /// Max entry deviation from `other` after removing one global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let k = (0..self.data.len())
            .max_by(|&i, &j| self.data[i].norm().total_cmp(&self.data[j].norm()))
            .unwrap_or(0);
        let ratio = other.data[k] / self.data[k];
        let ph = if ratio.norm() > 0.0 {
            ratio / ratio.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * ph - b).norm())
            .fold(0.0, f64::max)
    }

    /// Converts a 2x2 or 4x4 unitary into a gate.
    pub fn to_gate(&self) -> Result<GateMatrix> {
        GateMatrix::new(self.dim, self.data.clone())
    }
}

/// Complex Gaussian with independent real and imaginary parts of variance 1/2.
#[inline]
fn complex_gaussian(rng: &mut Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) / SQRT_2
}

/// Ginibre matrix with density proportional to `exp(-tr Z^dagger Z)`, so `E|z_ij|^2 = 1`.
pub fn sample_ginibre(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for z in &mut m.data {
        *z = complex_gaussian(rng);
    }
    m
}

/// Haar-random unitary: `Q` of the QR factorization of a Ginibre matrix whose
/// `R` has been made real-positive on the diagonal.
pub fn haar_via_qr(dim: usize, rng: &mut Rng) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    loop {
        let z = sample_ginibre(dim, rng);
        match householder_qr(&z) {
            Ok((mut q, mut r)) => {
                fix_phases(&mut q, &mut r);
                return Ok(q);
            }
            // probability zero; draw again
            Err(Error::Numerical(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Haar-random state `U|0>`: a normalized Ginibre column. Same law as the
/// first column of [`haar_via_qr`] without the O(N^3) factorization.
pub fn haar_state(dim: usize, rng: &mut Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// GUE draw `H = D + R + R^dagger` with `D` real Gaussian of variance 1 and
/// `R` strictly upper triangular with `E|R_ij|^2 = 1`.
pub fn sample_gue(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        let d: f64 = StandardNormal.sample(rng);
        h[(i, i)] = Complex64::new(d, 0.0);
        for j in i + 1..dim {
            let r = complex_gaussian(rng);
            h[(i, j)] = r;
            h[(j, i)] = r.conj();
        }
    }
    h
}

/// Haar-random unitary from GUE eigenvectors, each multiplied by an
/// independent uniform phase.
pub fn haar_via_gue(dim: usize, rng: &mut Rng) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    let h = sample_gue(dim, rng);
    let mut u = hermitian_eigen(&h)?.vectors;
    for c in 0..dim {
        let ph = Complex64::from_polar(1.0, 2.0 * PI * rng.uniform());
        for r in 0..dim {
            u[(r, c)] *= ph;
        }
    }
    Ok(u)
}

fn check_pt_args(p: f64, dim: u64) -> Result<()> {
    if dim < 2 {
        return Err(Error::Input(format!("Porter-Thomas law needs N >= 2, got {dim}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Input(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Density of `|<x|U|0>|^2` for Haar `U` on `C^N`: `(N-1)(1-p)^(N-2)`.
pub fn porter_thomas_pdf(p: f64, dim: u64) -> Result<f64> {
    check_pt_args(p, dim)?;
    Ok((dim - 1) as f64 * (1.0 - p).powf((dim - 2) as f64))
}

/// `1 - (1-p)^(N-1)`
pub fn porter_thomas_cdf(p: f64, dim: u64) -> Result<f64> {
    check_pt_args(p, dim)?;
    // ln_1p/exp_m1 keep precision at N ~ 2^20 and p ~ 1/N
    if p == 1.0 {
        return Ok(1.0);
    }
    Ok(-((dim - 1) as f64 * (-p).ln_1p()).exp_m1())
}

/// Inverse CDF, for synthetic null samples.
pub fn porter_thomas_quantile(u: f64, dim: u64) -> Result<f64> {
    check_pt_args(u, dim)?;
    if u == 1.0 {
        return Ok(1.0);
    }
    Ok(-((-u).ln_1p() / (dim - 1) as f64).exp_m1())
}

/// Haar moments of a single output probability: `(1/N, 2/(N(N+1)))`.
pub fn haar_moments(dim: u64) -> Result<(f64, f64)> {
    if dim == 0 {
        return Err(Error::Input("dimension must be at least 1".into()));
    }
    let n = dim as f64;
    Ok((1.0 / n, 2.0 / (n * (n + 1.0))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn porter_thomas_values() {
        assert_eq!(porter_thomas_pdf(0.0, 4).unwrap(), 3.0);
        assert_eq!(porter_thomas_pdf(1.0, 4).unwrap(), 0.0);
        assert_eq!(porter_thomas_pdf(0.5, 2).unwrap(), 1.0);
        assert!(porter_thomas_pdf(0.5, 1).is_err());
        assert!(porter_thomas_pdf(1.5, 4).is_err());
        for n in [2, 3, 64, 1 << 20] {
            assert_eq!(porter_thomas_cdf(0.0, n).unwrap(), 0.0);
            assert_eq!(porter_thomas_cdf(1.0, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn cdf_large_n_limit() {
        // (1 - 1/(2N))^(N-1) -> e^{-1/2}
        let n = 1u64 << 20;
        let v = porter_thomas_cdf(1.0 / (2.0 * n as f64), n).unwrap();
        let limit = 1.0 - (-0.5f64).exp();
        assert!((v - limit).abs() < 1e-6, "{v} vs {limit}");
    }

    #[test]
    fn quantile_inverts_cdf() {
        for n in [2, 8, 1000] {
            for u in [0.0, 0.1, 0.5, 0.9, 0.999] {
                let p = porter_thomas_quantile(u, n).unwrap();
                assert!((porter_thomas_cdf(p, n).unwrap() - u).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn haar_moment_values() {
        assert_eq!(haar_moments(2).unwrap(), (0.5, 1.0 / 3.0));
        let (a, b) = haar_moments(8).unwrap();
        assert_eq!(a, 0.125);
        assert!((b - 2.0 / 72.0).abs() < 1e-17);
    }

    #[test]
    fn ginibre_is_reproducible() {
        let a = sample_ginibre(2, &mut Rng::new(5));
        let b = sample_ginibre(2, &mut Rng::new(5));
        assert_eq!(a, b);
    }

    #[test]
    fn gue_is_hermitian() {
        let mut rng = Rng::new(6);
        for n in [1, 2, 7] {
            assert!(sample_gue(n, &mut rng).hermiticity_error() < 1e-12);
        }
    }

    #[test]
    fn both_haar_routes_are_unitary() {
        let mut rng = Rng::new(9);
        for n in [1, 2, 4, 16, 64] {
            assert!(haar_via_qr(n, &mut rng).unwrap().unitarity_error() <= 1e-10);
            assert!(haar_via_gue(n, &mut rng).unwrap().unitarity_error() <= 1e-9);
        }
    }

    #[test]
    fn haar_state_is_normalized() {
        let v = haar_state(32, &mut Rng::new(1));
        let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}
