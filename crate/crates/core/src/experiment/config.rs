use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ensembles::{DiagonalStructure, GateSource};
use crate::error::{Error, Result};
use crate::quench::{QuenchConventions, MAX_EXACT_M};
use crate::statevector::MAX_QUBITS;

pub const TOOL_VERSION: &str = concat!("anticonc ", env!("CARGO_PKG_VERSION"));

/// Largest register for the Haar ensemble (state drawn as a Ginibre column).
pub const MAX_HAAR_QUBITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EnsembleSpec {
    Haar {
        n: usize,
    },
    Brickwork {
        n: usize,
        depth: usize,
        #[serde(default = "haar_source")]
        source: GateSource,
        #[serde(default = "default_epsilon")]
        epsilon: f64,
    },
    Iqp {
        m: usize,
    },
    Diagonal {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        structure: Option<DiagonalStructure>,
    },
    Quench {
        m: usize,
        #[serde(default)]
        conventions: QuenchConventions,
    },
}

fn haar_source() -> GateSource {
    GateSource::HaarU4
}

fn default_epsilon() -> f64 {
    0.1
}

impl EnsembleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Haar { .. } => "haar",
            Self::Brickwork { .. } => "brickwork",
            Self::Iqp { .. } => "iqp",
            Self::Diagonal { .. } => "diagonal",
            Self::Quench { .. } => "quench",
        }
    }

    /// Qubits whose outcome `p` refers to: `n`, or `m` for IQP and for the
    /// quench conditionals over `x_R`.
    pub fn outcome_qubits(&self) -> usize {
        match *self {
            Self::Haar { n } | Self::Brickwork { n, .. } | Self::Diagonal { n, .. } => n,
            Self::Iqp { m } | Self::Quench { m, .. } => m,
        }
    }

    pub fn depth(&self) -> Option<usize> {
        match self {
            Self::Brickwork { depth, .. } => Some(*depth),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.outcome_qubits();
        if q == 0 {
            return Err(Error::Input("ensemble needs at least one qubit".into()));
        }
        match self {
            Self::Haar { n } if *n > MAX_HAAR_QUBITS => Err(Error::Resource(format!(
                "Haar sampling is limited to n <= {MAX_HAAR_QUBITS}, got {n}"
            ))),
            Self::Quench { m, conventions } => {
                conventions.validate()?;
                if *m > MAX_EXACT_M {
                    return Err(Error::Resource(format!(
                        "quench is limited to m <= {MAX_EXACT_M}, got {m}"
                    )));
                }
                Ok(())
            }
            _ if q > MAX_QUBITS => Err(Error::Resource(format!(
                "{q} qubits exceeds the dense statevector limit of {MAX_QUBITS}"
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatSelection {
    #[serde(default)]
    pub moments: bool,
    #[serde(default)]
    pub anticonc: bool,
    #[serde(default)]
    pub ks_pt: bool,
    #[serde(default)]
    pub pz: bool,
}

impl StatSelection {
    pub fn any(&self) -> bool {
        self.moments || self.anticonc || self.ks_pt || self.pz
    }

    pub fn all() -> Self {
        Self {
            moments: true,
            anticonc: true,
            ks_pt: true,
            pz: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_alpha() -> f64 {
    0.5
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            alpha: default_alpha(),
            epsilon: default_epsilon(),
        }
    }
}

/// Fully resolved experiment. The seed is mandatory: nothing is seeded from the clock.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ensemble: EnsembleSpec,
    pub trials: usize,
    pub seed: u64,
    /// Fixed outcome `x`; all zeros when absent. Ignored by the quench ensemble.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default)]
    pub output: OutputPaths,
    #[serde(default)]
    pub statistics: StatSelection,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl ExperimentConfig {
    pub fn new(ensemble: EnsembleSpec, trials: usize, seed: u64) -> Self {
        Self {
            ensemble,
            trials,
            seed,
            x: None,
            output: OutputPaths::default(),
            statistics: StatSelection::default(),
            tolerances: Tolerances::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::Schema(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.ensemble.validate()?;
        if self.trials == 0 {
            return Err(Error::Input("trials must be >= 1".into()));
        }
        if let Some(x) = &self.x {
            let bits: crate::Bitstring = x.parse()?;
            if bits.len() != self.ensemble.outcome_qubits() {
                return Err(Error::Input(format!(
                    "x has {} bits, ensemble has {} outcome qubits",
                    bits.len(),
                    self.ensemble.outcome_qubits()
                )));
            }
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultRecord<T> {
    pub run_id: String,
    pub tool_version: String,
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub result: T,
}

impl<T> ResultRecord<T> {
    pub fn new(config: &ExperimentConfig, result: T) -> Self {
        let hash = config.hash();
        Self {
            run_id: format!("{}-{}", config.ensemble.name(), &hash[..12]),
            tool_version: TOOL_VERSION.to_string(),
            config_hash: hash,
            config: config.clone(),
            result,
        }
    }

    /// Whether the stored hash still matches the stored config.
    pub fn hash_matches(&self) -> bool {
        self.config.hash() == self.config_hash
    }
}
