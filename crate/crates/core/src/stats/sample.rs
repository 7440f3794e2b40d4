use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Values within this distance outside `[0, 1]` are rounding noise and get clamped.
const CLAMP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub ensemble: String,
    /// Qubit count (or `m` for IQP and quench samples, where `N = 2^m`).
    pub n: usize,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
}

/// Batch of output probabilities from one ensemble over `N = 2^n` outcomes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbSample {
    pub meta: SampleMeta,
    pub dim: u64,
    values: Vec<f64>,
}

impl ProbSample {
    pub fn new(meta: SampleMeta, dim: u64, mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("probability sample is empty".into()));
        }
        if dim < 1 {
            return Err(Error::Input("dimension must be >= 1".into()));
        }
        for v in &mut values {
            if !v.is_finite() || *v < -CLAMP_TOL || *v > 1.0 + CLAMP_TOL {
                return Err(Error::Input(format!("value {v} is not a probability")));
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Self { meta, dim, values })
    }

    /// Sample over `2^n` outcomes with metadata naming only the ensemble.
    pub fn from_values(ensemble: &str, n: usize, values: Vec<f64>) -> Result<Self> {
        let meta = SampleMeta {
            ensemble: ensemble.to_string(),
            n,
            ..Default::default()
        };
        Self::new(meta, 1u64 << n, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
