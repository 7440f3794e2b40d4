use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Self::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        })
    }
}

/// One statistic with its uncertainty, reference value and verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub statistic: String,
    pub estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub se: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    pub verdict: Verdict,
    pub params: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(statistic: &str, estimate: f64, verdict: Verdict) -> Self {
        Self {
            statistic: statistic.to_string(),
            estimate,
            se: None,
            ci: None,
            reference: None,
            verdict,
            params: BTreeMap::new(),
        }
    }

    pub fn with_se(mut self, se: f64) -> Self {
        self.se = Some(se);
        self
    }

    pub fn with_ci(mut self, lo: f64, hi: f64) -> Self {
        self.ci = Some((lo, hi));
        self
    }

    pub fn with_reference(mut self, r: f64) -> Self {
        self.reference = Some(r);
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:.6}", self.statistic, self.estimate)?;
        if let Some(se) = self.se {
            write!(f, " (se {se:.2e})")?;
        }
        if let Some((lo, hi)) = self.ci {
            write!(f, " [{lo:.4}, {hi:.4}]")?;
        }
        if let Some(r) = self.reference {
            write!(f, " ref {r:.6}")?;
        }
        write!(f, " -> {}", self.verdict)
    }
}
