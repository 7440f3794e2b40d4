//! Dense statevector simulation.
//!
//! Amplitudes are stored big-endian: qubit 0 is the most significant bit of
//! the basis index. Gates are applied in place with stride loops, O(2^n) per
//! gate.

mod circuit;
pub mod gate;

use num_complex::Complex64;

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::rng::Rng;

pub use circuit::{Circuit, Op};
pub use gate::{GateMatrix, UNITARY_TOL};

/// Largest register the dense representation accepts.
pub const MAX_QUBITS: usize = 24;

const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct State {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("need at least one qubit".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!(
            "{n} qubits exceeds the dense statevector limit of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Inserts a zero bit at position `pos` (counted from the least significant bit).
#[inline]
fn insert_zero(k: usize, pos: usize) -> usize {
    let low = k & ((1 << pos) - 1);
    ((k >> pos) << (pos + 1)) | low
}

impl State {
    /// `|0...0>`
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Computational basis state `|x>`.
    pub fn basis(n: usize, x: &Bitstring) -> Result<Self> {
        if x.len() != n {
            return Err(Error::Input(format!("bitstring has {} bits, expected {n}", x.len())));
        }
        let mut s = Self::zero(n)?;
        s.amps[0] = Complex64::new(0.0, 0.0);
        s.amps[x.index()] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// `|+>^n`
    pub fn plus(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let a = (1.0 / (1u64 << n) as f64).sqrt();
        Ok(Self {
            n,
            amps: vec![Complex64::new(a, 0.0); 1 << n],
        })
    }

    /// Product state from per-qubit amplitude pairs `(a0, a1)`, qubit 0 first.
    pub fn product(factors: &[[Complex64; 2]]) -> Result<Self> {
        let n = factors.len();
        check_qubits(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        amps.push(Complex64::new(1.0, 0.0));
        for f in factors {
            let norm = f[0].norm_sqr() + f[1].norm_sqr();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::Validation(format!("factor {f:?} is not normalized")));
            }
            let mut next = Vec::with_capacity(amps.len() * 2);
            for a in &amps {
                next.push(a * f[0]);
                next.push(a * f[1]);
            }
            amps = next;
        }
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() || amps.len() < 2 {
            return Err(Error::Input(format!(
                "amplitude count {} is not 2^n with n >= 1",
                amps.len()
            )));
        }
        let n = amps.len().trailing_zeros() as usize;
        check_qubits(n)?;
        let s = Self { n, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!("state norm^2 is {norm}")));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    #[inline]
    fn bit_pos(&self, qubit: usize) -> usize {
        self.n - 1 - qubit
    }

    /// Applies `gate` to `targets` after checking it is unitary.
    pub fn apply_gate(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        let err = gate.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::Validation(format!(
                "gate is not unitary: max |U^dagger U - I| = {err:.3e}"
            )));
        }
        self.apply_gate_unchecked(gate, targets)
    }

    /// Applies `gate` without the unitarity check. Targets are still validated.
    pub fn apply_gate_unchecked(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        circuit::check_targets(self.n, gate.arity(), targets)?;
        match gate.arity() {
            1 => self.apply_single(gate, targets[0]),
            _ => self.apply_two(gate, targets[0], targets[1]),
        }
        Ok(())
    }

    fn apply_single(&mut self, g: &GateMatrix, q: usize) {
        let pos = self.bit_pos(q);
        let stride = 1 << pos;
        let (g00, g01, g10, g11) = (g.entry(0, 0), g.entry(0, 1), g.entry(1, 0), g.entry(1, 1));
        for k in 0..self.amps.len() / 2 {
            let i0 = insert_zero(k, pos);
            let i1 = i0 | stride;
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = g00 * a0 + g01 * a1;
            self.amps[i1] = g10 * a0 + g11 * a1;
        }
    }

    fn apply_two(&mut self, g: &GateMatrix, qa: usize, qb: usize) {
        let (pa, pb) = (self.bit_pos(qa), self.bit_pos(qb));
        let (ma, mb) = (1usize << pa, 1usize << pb);
        let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
        let m = g.entries();
        for k in 0..self.amps.len() / 4 {
            let base = insert_zero(insert_zero(k, lo), hi);
            let idx = [base, base | mb, base | ma, base | ma | mb];
            let v = idx.map(|i| self.amps[i]);
            for (r, &i) in idx.iter().enumerate() {
                let row = &m[r * 4..r * 4 + 4];
                self.amps[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
            }
        }
    }

    /// Controlled-Z fast path.
    pub fn apply_cz(&mut self, qa: usize, qb: usize) -> Result<()> {
        circuit::check_targets(self.n, 2, &[qa, qb])?;
        let mask = (1usize << self.bit_pos(qa)) | (1usize << self.bit_pos(qb));
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a = -*a;
            }
        }
        Ok(())
    }

    /// Multiplies amplitude `x` by `phases[x]`.
    pub fn apply_diagonal(&mut self, phases: &[Complex64]) -> Result<()> {
        if phases.len() != self.amps.len() {
            return Err(Error::Input(format!(
                "diagonal has {} entries, state has {}",
                phases.len(),
                self.amps.len()
            )));
        }
        for (a, p) in self.amps.iter_mut().zip(phases) {
            *a *= p;
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::Input(format!(
                "circuit acts on {} qubits, state has {}",
                c.n(),
                self.n
            )));
        }
        for op in c.ops() {
            self.apply_gate(&op.gate, &op.targets)?;
        }
        Ok(())
    }

    /// Same as [`State::apply_circuit`] without per-gate unitarity checks.
    pub fn apply_circuit_unchecked(&mut self, c: &Circuit) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::Input(format!(
                "circuit acts on {} qubits, state has {}",
                c.n(),
                self.n
            )));
        }
        for op in c.ops() {
            self.apply_gate_unchecked(&op.gate, &op.targets)?;
        }
        Ok(())
    }

    /// Hadamard on every qubit (butterfly passes).
    pub fn hadamard_all(&mut self) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let len = self.amps.len();
        let mut stride = 1;
        while stride < len {
            for block in (0..len).step_by(2 * stride) {
                for i in block..block + stride {
                    let (a, b) = (self.amps[i], self.amps[i + stride]);
                    self.amps[i] = (a + b) * h;
                    self.amps[i + stride] = (a - b) * h;
                }
            }
            stride *= 2;
        }
    }

    pub fn probability(&self, x: &Bitstring) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::Input(format!(
                "bitstring has {} bits, state has {} qubits",
                x.len(),
                self.n
            )));
        }
        Ok(self.amps[x.index()].norm_sqr())
    }

    #[inline]
    pub fn probability_at(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// Outcome probabilities indexed by basis state.
    pub fn distribution(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws one computational-basis outcome.
    pub fn sample(&self, rng: &mut Rng) -> Bitstring {
        let u = rng.uniform() * self.norm_sqr();
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                last_nonzero = i;
            }
            acc += p;
            if u < acc {
                return Bitstring::from_index(self.n, i);
            }
        }
        Bitstring::from_index(self.n, last_nonzero)
    }
}
