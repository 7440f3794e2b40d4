use crate::error::{Error, Result};

use super::gate::GateMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Op {
    pub gate: GateMatrix,
    pub targets: Vec<usize>,
}

/// Ordered list of one- and two-qubit gate applications on `n` qubits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    n: usize,
    ops: Vec<Op>,
}

pub(crate) fn check_targets(n: usize, arity: usize, targets: &[usize]) -> Result<()> {
    if targets.len() != arity {
        return Err(Error::Input(format!(
            "gate acts on {arity} qubit(s) but {} target(s) given",
            targets.len()
        )));
    }
    if let Some(&t) = targets.iter().find(|&&t| t >= n) {
        return Err(Error::Input(format!("target qubit {t} out of range for {n} qubits")));
    }
    if arity == 2 && targets[0] == targets[1] {
        return Err(Error::Input(format!(
            "two-qubit gate with repeated target {}",
            targets[0]
        )));
    }
    Ok(())
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, ops: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, gate: GateMatrix, targets: &[usize]) -> Result<()> {
        check_targets(self.n, gate.arity(), targets)?;
        self.ops.push(Op {
            gate,
            targets: targets.to_vec(),
        });
        Ok(())
    }

    /// Appends all ops of `other` (same qubit count).
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Input(format!(
                "cannot append a {}-qubit circuit to a {}-qubit one",
                other.n, self.n
            )));
        }
        self.ops.extend(other.ops.iter().cloned());
        Ok(())
    }

    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            ops: self.ops.iter().rev().cloned().collect(),
        }
    }

    /// Circuit implementing the inverse unitary.
    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            ops: self
                .ops
                .iter()
                .rev()
                .map(|op| Op {
                    gate: op.gate.adjoint(),
                    targets: op.targets.clone(),
                })
                .collect(),
        }
    }

    /// Largest unitarity error over all gates.
    pub fn max_unitarity_error(&self) -> f64 {
        self.ops.iter().map(|op| op.gate.unitarity_error()).fold(0.0, f64::max)
    }
}
