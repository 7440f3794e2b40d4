use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::statevector::{gate, Circuit};

/// Two-qubit phases `{0, pi}` in `diag(1,1,1,e^{i phi})`.
pub const PAIR_PHASES: [f64; 2] = [0.0, PI];
/// Single-qubit phases `{0, 2pi/3, 4pi/3}` in `diag(1, e^{i phi})`.
pub const SITE_PHASES: [f64; 3] = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];

/// Which pairs and sites carry gates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalStructure {
    pub pairs: Vec<(usize, usize)>,
    pub sites: Vec<usize>,
}

impl DiagonalStructure {
    /// All pairs and all sites.
    pub fn complete(n: usize) -> Self {
        Self {
            pairs: (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(),
            sites: (0..n).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalSpec {
    pub n: usize,
    pub structure: DiagonalStructure,
}

impl DiagonalSpec {
    pub fn complete(n: usize) -> Self {
        Self {
            n,
            structure: DiagonalStructure::complete(n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Input("diagonal circuit needs n >= 1".into()));
        }
        for &(a, b) in &self.structure.pairs {
            if a >= self.n || b >= self.n || a == b {
                return Err(Error::Input(format!("invalid pair ({a}, {b}) for {} qubits", self.n)));
            }
        }
        if let Some(s) = self.structure.sites.iter().find(|&&s| s >= self.n) {
            return Err(Error::Input(format!("site {s} out of range")));
        }
        Ok(())
    }
}

/// Phase choices of one draw: indices into [`PAIR_PHASES`] and [`SITE_PHASES`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalDraw {
    pub pair_choice: Vec<u8>,
    pub site_choice: Vec<u8>,
}

impl DiagonalDraw {
    pub fn zero(spec: &DiagonalSpec) -> Self {
        Self {
            pair_choice: vec![0; spec.structure.pairs.len()],
            site_choice: vec![0; spec.structure.sites.len()],
        }
    }

    pub fn to_circuit(&self, spec: &DiagonalSpec) -> Result<Circuit> {
        spec.validate()?;
        let mut c = Circuit::new(spec.n);
        for (&(a, b), &k) in spec.structure.pairs.iter().zip(&self.pair_choice) {
            c.push(gate::controlled_phase(PAIR_PHASES[usize::from(k)]), &[a, b])?;
        }
        for (&s, &k) in spec.structure.sites.iter().zip(&self.site_choice) {
            c.push(gate::phase(SITE_PHASES[usize::from(k)]), &[s])?;
        }
        Ok(c)
    }
}

pub fn sample_diagonal_draw(spec: &DiagonalSpec, rng: &mut Rng) -> Result<DiagonalDraw> {
    spec.validate()?;
    Ok(DiagonalDraw {
        pair_choice: (0..spec.structure.pairs.len()).map(|_| rng.below(2) as u8).collect(),
        site_choice: (0..spec.structure.sites.len()).map(|_| rng.below(3) as u8).collect(),
    })
}

/// Random circuit of commuting Z-diagonal gates; meant to act on `|+>^n`.
pub fn sample_diagonal_circuit(spec: &DiagonalSpec, rng: &mut Rng) -> Result<Circuit> {
    sample_diagonal_draw(spec, rng)?.to_circuit(spec)
}
