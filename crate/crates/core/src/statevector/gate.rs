use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum entry-wise deviation of `U^dagger U` from the identity accepted as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// One- or two-qubit unitary, row-major.
///
/// For two-qubit gates the first target qubit is the high bit of the
/// 4x4 basis ordering `|t0 t1>`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl GateMatrix {
    /// Checked constructor: rejects wrong shapes and non-unitary matrices.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        let g = Self::new_unchecked(dim, entries)?;
        let err = g.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::Validation(format!(
                "gate is not unitary: max |U^dagger U - I| = {err:.3e}"
            )));
        }
        Ok(g)
    }

    /// Shape-checked only; for matrices already known to be unitary.
    pub fn new_unchecked(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::Input(format!("gate dimension must be 2 or 4, got {dim}")));
        }
        if entries.len() != dim * dim {
            return Err(Error::Input(format!(
                "expected {} entries for a {dim}x{dim} gate, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn single(m: [[Complex64; 2]; 2]) -> Self {
        Self {
            dim: 2,
            entries: m.iter().flatten().copied().collect(),
        }
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (k, d) in diag.iter().enumerate() {
            entries[k * dim + k] = *d;
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits the gate acts on.
    pub fn arity(&self) -> usize {
        if self.dim == 2 {
            1
        } else {
            2
        }
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        Self { dim: d, entries }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                for c in 0..d {
                    entries[r * d + c] += a * other.entries[k * d + c];
                }
            }
        }
        Self { dim: d, entries }
    }

    /// Tensor product of two single-qubit gates; `self` acts on the first target.
    pub fn kron(&self, other: &Self) -> Self {
        assert!(self.dim == 2 && other.dim == 2, "kron is defined for one-qubit factors");
        let mut entries = vec![Complex64::new(0.0, 0.0); 16];
        for (r1, c1, r2, c2) in (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .flat_map(|(a, b)| (0..2).flat_map(move |c| (0..2).map(move |d| (a, b, c, d))))
        {
            entries[(2 * r1 + r2) * 4 + 2 * c1 + c2] = self.entry(r1, c1) * other.entry(r2, c2);
        }
        Self { dim: 4, entries }
    }

    pub fn unitarity_error(&self) -> f64 {
        let prod = self.adjoint().matmul(self);
        let mut err: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let target = if r == c { 1.0 } else { 0.0 };
                err = err.max((prod.entry(r, c) - target).norm());
            }
        }
        err
    }

    /// Max entry deviation after removing the best global phase, taken from
    /// the largest-magnitude entry of `self`.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let (k, _) =
            self.entries.iter().enumerate().fold(
                (0, 0.0),
                |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best },
            );
        let ratio = other.entries[k] / self.entries[k];
        let phase = if ratio.norm() > 0.0 {
            ratio / ratio.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity() -> GateMatrix {
    GateMatrix::single([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
}

pub fn hadamard() -> GateMatrix {
    let h = FRAC_1_SQRT_2;
    GateMatrix::single([[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]])
}

pub fn pauli_x() -> GateMatrix {
    GateMatrix::single([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn pauli_y() -> GateMatrix {
    GateMatrix::single([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn pauli_z() -> GateMatrix {
    GateMatrix::single([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
}

/// `diag(1, e^{i phi})`
pub fn phase(phi: f64) -> GateMatrix {
    GateMatrix::single([
        [c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, phi)],
    ])
}

pub fn t_gate() -> GateMatrix {
    phase(PI / 4.0)
}

/// Principal square root of X: `(1/2)[[1+i, 1-i], [1-i, 1+i]]`.
pub fn sqrt_x() -> GateMatrix {
    GateMatrix::single([[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]])
}

/// Principal square root of Y: `(1/2)[[1+i, -1-i], [1+i, 1+i]]`.
pub fn sqrt_y() -> GateMatrix {
    GateMatrix::single([[c(0.5, 0.5), c(-0.5, -0.5)], [c(0.5, 0.5), c(0.5, 0.5)]])
}

/// `diag(1, 1, 1, e^{i phi})`
pub fn controlled_phase(phi: f64) -> GateMatrix {
    let one = c(1.0, 0.0);
    GateMatrix::diagonal(&[one, one, one, Complex64::from_polar(1.0, phi)]).expect("diagonal phases are unitary")
}

pub fn cz() -> GateMatrix {
    let one = c(1.0, 0.0);
    GateMatrix::diagonal(&[one, one, one, -one]).expect("diagonal phases are unitary")
}

/// `exp(i angle X)`
pub fn x_rotation(angle: f64) -> GateMatrix {
    let (s, co) = angle.sin_cos();
    GateMatrix::single([[c(co, 0.0), c(0.0, s)], [c(0.0, s), c(co, 0.0)]])
}

/// `exp(i angle X⊗X)`
pub fn xx_rotation(angle: f64) -> GateMatrix {
    let (s, co) = angle.sin_cos();
    let mut entries = vec![c(0.0, 0.0); 16];
    for k in 0..4 {
        entries[k * 4 + k] = c(co, 0.0);
        entries[k * 4 + (3 - k)] = c(0.0, s);
    }
    GateMatrix { dim: 4, entries }
}
