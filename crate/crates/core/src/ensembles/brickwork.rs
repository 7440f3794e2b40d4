use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gate_set::{gate_set_by_name, NamedGate};
use crate::error::{Error, Result};
use crate::random_matrix::haar_via_qr;
use crate::rng::Rng;
use crate::statevector::{Circuit, GateMatrix};

/// Calibrated constant for [`design_depth`]: with `epsilon = 0.1` it gives
/// depth `ceil(7 n ln 10) >= 16 n`, where the design-convergence scan puts
/// Haar-local brickwork within `|delta_2| <= 0.1` at n = 6.
pub const DEFAULT_DESIGN_CONSTANT: f64 = 7.0;

/// Where each two-qubit brick comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GateSource {
    HaarU4,
    GateSet(String),
}

impl FromStr for GateSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(Self::HaarU4),
            other => {
                gate_set_by_name(other)?;
                Ok(Self::GateSet(other.to_string()))
            }
        }
    }
}

impl TryFrom<String> for GateSource {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GateSource> for String {
    fn from(s: GateSource) -> String {
        s.to_string()
    }
}

impl fmt::Display for GateSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HaarU4 => f.write_str("haar"),
            Self::GateSet(name) => f.write_str(name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrickworkSpec {
    pub n: usize,
    pub depth: usize,
    pub source: GateSource,
    /// Design accuracy target; only used by [`design_depth`].
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    0.1
}

impl BrickworkSpec {
    pub fn haar(n: usize, depth: usize) -> Self {
        Self {
            n,
            depth,
            source: GateSource::HaarU4,
            epsilon: default_epsilon(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Input(format!("brickwork needs n >= 2, got {}", self.n)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Input(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.source == GateSource::HaarU4 && self.n % 2 == 1 {
            return Err(Error::Input(format!(
                "parallel Haar-local circuits assume an even qubit count, got {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// One layer: a global offset (0 pairs (0,1),(2,3),...; 1 pairs (1,2),(3,4),...)
/// and a brick per pair.
#[derive(Clone, Debug)]
pub struct BrickLayer {
    pub offset: usize,
    pub bricks: Vec<((usize, usize), GateMatrix)>,
}

pub fn sample_brickwork_layers(spec: &BrickworkSpec, rng: &mut Rng) -> Result<Vec<BrickLayer>> {
    spec.validate()?;
    let lifted: Vec<NamedGate> = match &spec.source {
        GateSource::HaarU4 => Vec::new(),
        GateSource::GateSet(name) => gate_set_by_name(name)?.lifted_two_qubit(),
    };
    let mut layers = Vec::with_capacity(spec.depth);
    for _ in 0..spec.depth {
        let offset = usize::from(rng.coin());
        let mut bricks = Vec::new();
        let mut k = offset;
        while k + 1 < spec.n {
            let gate = match spec.source {
                GateSource::HaarU4 => haar_via_qr(4, rng)?.to_gate()?,
                GateSource::GateSet(_) => lifted[rng.below(lifted.len() as u64) as usize].gate.clone(),
            };
            bricks.push(((k, k + 1), gate));
            k += 2;
        }
        layers.push(BrickLayer { offset, bricks });
    }
    Ok(layers)
}

/// Parallel local random circuit: each layer picks the even or odd pairing
/// with probability 1/2 and fills every pair independently.
pub fn sample_brickwork_circuit(spec: &BrickworkSpec, rng: &mut Rng) -> Result<Circuit> {
    let mut c = Circuit::new(spec.n);
    for layer in sample_brickwork_layers(spec, rng)? {
        for ((a, b), g) in layer.bricks {
            c.push(g, &[a, b])?;
        }
    }
    Ok(c)
}

/// `ceil(c * n * ln(1/epsilon))`
pub fn design_depth(n: usize, epsilon: f64, c: f64) -> Result<usize> {
    if c <= 0.0 {
        return Err(Error::Input(format!("calibration constant must be positive, got {c}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Input(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let raw = c * n as f64 * (-epsilon.ln());
    // absorb rounding noise such as ln(1/e) = 1 + 2^-52
    Ok((raw - 1e-9).ceil().max(0.0) as usize)
}
