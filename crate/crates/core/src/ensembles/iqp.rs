use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::random_matrix::ComplexMatrix;
use crate::rng::Rng;
use crate::statevector::{gate, Circuit, State};

/// Dense IQP circuit on `m` qubits,
/// `V = prod_i exp(i a_i pi/8 X_i) prod_{i<j} exp(i a_ij pi/8 X_i X_j)`,
/// with angle indices in Z_8. Pair angles are stored in lexicographic order
/// `(0,1), (0,2), ..., (m-2,m-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IqpCircuit {
    m: usize,
    single: Vec<u8>,
    pairs: Vec<u8>,
}

fn pair_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn angle(k: u8) -> f64 {
    f64::from(k) * PI / 8.0
}

impl IqpCircuit {
    pub fn new(m: usize, single: Vec<u8>, pairs: Vec<u8>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Input("IQP circuit needs m >= 1".into()));
        }
        if single.len() != m || pairs.len() != pair_count(m) {
            return Err(Error::Input(format!(
                "expected {m} single and {} pair angles, got {} and {}",
                pair_count(m),
                single.len(),
                pairs.len()
            )));
        }
        if let Some(k) = single.iter().chain(&pairs).find(|&&k| k > 7) {
            return Err(Error::Input(format!("angle index {k} outside Z_8")));
        }
        Ok(Self { m, single, pairs })
    }

    /// Identity element.
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            single: vec![0; m],
            pairs: vec![0; pair_count(m)],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn single_angles(&self) -> &[u8] {
        &self.single
    }

    pub fn pair_angles(&self) -> &[u8] {
        &self.pairs
    }

    pub fn parameter_count(&self) -> usize {
        self.single.len() + self.pairs.len()
    }

    /// Group product: angle indices add mod 8.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::Input(format!(
                "cannot compose IQP circuits on {} and {} qubits",
                self.m, other.m
            )));
        }
        let add = |a: &[u8], b: &[u8]| a.iter().zip(b).map(|(x, y)| (x + y) % 8).collect();
        Ok(Self {
            m: self.m,
            single: add(&self.single, &other.single),
            pairs: add(&self.pairs, &other.pairs),
        })
    }

    pub fn inverse(&self) -> Self {
        let neg = |a: &[u8]| a.iter().map(|x| (8 - x) % 8).collect();
        Self {
            m: self.m,
            single: neg(&self.single),
            pairs: neg(&self.pairs),
        }
    }

    /// `exp(i phi(z))` in the Z basis, where `phi = sum a_i z_i + sum a_ij z_i z_j`
    /// and `z = +1` for bit 0.
    pub fn z_phases(&self) -> Vec<Complex64> {
        let m = self.m;
        (0..1usize << m)
            .map(|x| {
                let z = |q: usize| if (x >> (m - 1 - q)) & 1 == 0 { 1.0 } else { -1.0 };
                let mut phi = 0.0;
                for (q, &k) in self.single.iter().enumerate() {
                    phi += angle(k) * z(q);
                }
                let mut idx = 0;
                for a in 0..m {
                    for b in a + 1..m {
                        phi += angle(self.pairs[idx]) * z(a) * z(b);
                        idx += 1;
                    }
                }
                Complex64::from_polar(1.0, phi)
            })
            .collect()
    }

    /// Applies `V = H^m D H^m` with `D` the Z-basis phase diagonal.
    pub fn apply(&self, state: &mut State) -> Result<()> {
        if state.n() != self.m {
            return Err(Error::Input(format!(
                "IQP circuit on {} qubits applied to {}-qubit state",
                self.m,
                state.n()
            )));
        }
        state.hadamard_all();
        state.apply_diagonal(&self.z_phases())?;
        state.hadamard_all();
        Ok(())
    }

    /// `V|0>`
    pub fn output_state(&self) -> Result<State> {
        let mut s = State::zero(self.m)?;
        self.apply(&mut s)?;
        Ok(s)
    }

    /// `|<x|V|0>|^2`
    pub fn output_probability(&self, x: &Bitstring) -> Result<f64> {
        self.output_state()?.probability(x)
    }

    /// Gate-by-gate form: single-qubit X rotations then pair XX rotations.
    pub fn to_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.m);
        for (q, &k) in self.single.iter().enumerate() {
            c.push(gate::x_rotation(angle(k)), &[q])?;
        }
        let mut idx = 0;
        for a in 0..self.m {
            for b in a + 1..self.m {
                c.push(gate::xx_rotation(angle(self.pairs[idx])), &[a, b])?;
                idx += 1;
            }
        }
        Ok(c)
    }

    /// Dense `2^m x 2^m` unitary, built column by column from the circuit.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        let dim = 1usize << self.m;
        let circuit = self.to_circuit()?;
        let mut u = ComplexMatrix::zeros(dim);
        for col in 0..dim {
            let mut s = State::basis(self.m, &Bitstring::from_index(self.m, col))?;
            s.apply_circuit(&circuit)?;
            for (row, a) in s.amplitudes().iter().enumerate() {
                u[(row, col)] = *a;
            }
        }
        Ok(u)
    }
}

/// Uniform element of the dense IQP group: every angle index i.i.d. over Z_8.
pub fn sample_dense_iqp(m: usize, rng: &mut Rng) -> Result<IqpCircuit> {
    if m == 0 {
        return Err(Error::Input("IQP circuit needs m >= 1".into()));
    }
    let mut draw = |len| (0..len).map(|_| rng.below(8) as u8).collect::<Vec<u8>>();
    let single = draw(m);
    let pairs = draw(pair_count(m));
    Ok(IqpCircuit { m, single, pairs })
}
