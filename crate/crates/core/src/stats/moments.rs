use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    pub second: f64,
    pub se_mean: f64,
    pub se_second: f64,
}

/// Sample mean of `p` and `p^2` with plug-in standard errors.
pub fn empirical_moments(values: &[f64]) -> Result<Moments> {
    let n = values.len();
    if n < 2 {
        return Err(Error::Input(format!("need at least 2 values for moments, got {n}")));
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let second = values.iter().map(|p| p * p).sum::<f64>() / nf;
    let var1 = values.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let var2 = values.iter().map(|p| (p * p - second).powi(2)).sum::<f64>() / (nf - 1.0);
    Ok(Moments {
        count: n,
        mean,
        second,
        se_mean: (var1 / nf).sqrt(),
        se_second: (var2 / nf).sqrt(),
    })
}
