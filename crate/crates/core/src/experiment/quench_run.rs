use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::TOOL_VERSION;
use crate::error::{Error, Result};
use crate::quench::{
    assign_roles, build_interaction_sublattice, conditionals_xr, cz_phases, export_lattice, hamiltonian_phases,
    marginal_xl, phase_deviation, q_ac_distribution, LatticeExport, LatticeSpec, QuenchConventions, QuenchInstance,
    MAX_EXACT_M,
};
use crate::rng::Rng;
use crate::stats::{Report, Verdict};

/// Anticoncentration bound for dense IQP conditionals, `Pr(q >= 2^-(m+1)) >= 1/12`.
pub const COROLLARY3_BOUND: f64 = 1.0 / 12.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuenchOptions {
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub conventions: QuenchConventions,
    pub verify_hamiltonian: bool,
}

/// Per trial: one `beta`, one uniformly random `x_L` and all `2^m`
/// conditionals `q(x_R | x_L, beta)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalDraw {
    pub trial: usize,
    pub x_l: usize,
    pub conditionals: Vec<f64>,
    /// Index of the `x_R` used for the Corollary 3 fraction.
    pub x_r: usize,
    /// Largest `|q(x_L | beta) - 2^-(n-m)|` over all `x_L` for this `beta`.
    pub marginal_deviation: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuenchReport {
    pub tool_version: String,
    pub config_hash: String,
    pub options: QuenchOptions,
    pub lattice: LatticeExport,
    pub family_size_log2: u32,
    pub marginal_max_deviation: f64,
    pub corollary3: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonian_deviation: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct QuenchOutput {
    pub report: QuenchReport,
    pub draws: Vec<ConditionalDraw>,
}

impl QuenchOutput {
    /// `trial,x_l,x_r,q` with one row per conditional.
    pub fn conditionals_csv(&self) -> String {
        let m = self.report.options.m;
        let left = m * (2 * m + 1) - m;
        let mut out = format!(
            "# tool_version: {TOOL_VERSION}\n# config_hash: {}\ntrial,x_l,x_r,q\n",
            self.report.config_hash
        );
        for d in &self.draws {
            for (r, q) in d.conditionals.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{:.16e}\n",
                    d.trial,
                    crate::Bitstring::from_index(left, d.x_l),
                    crate::Bitstring::from_index(m, r),
                    q
                ));
            }
        }
        out
    }
}

/// Exact conditional samples. Trial `t` uses substream `t` of `seed`.
pub fn quench_conditional_draws(
    m: usize,
    conventions: QuenchConventions,
    trials: usize,
    seed: u64,
) -> Result<Vec<ConditionalDraw>> {
    if m > MAX_EXACT_M {
        return Err(Error::Resource(format!(
            "quench is limited to m <= {MAX_EXACT_M}, got {m}"
        )));
    }
    let master = Rng::new(seed);
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = master.substream(t as u64);
            let inst = QuenchInstance::sample(m, conventions, &mut rng)?;
            let dist = q_ac_distribution(&inst)?;
            let lattice = inst.lattice;
            let left = lattice.n() - lattice.m();
            let uniform = 1.0 / (1u64 << left) as f64;
            let marginal_deviation = marginal_xl(&lattice, &dist)?
                .iter()
                .map(|q| (q - uniform).abs())
                .fold(0.0, f64::max);
            let x_l = rng.below(1u64 << left) as usize;
            let x_r = rng.below(1u64 << m) as usize;
            let conditionals = conditionals_xr(&lattice, &dist)?.swap_remove(x_l);
            Ok(ConditionalDraw {
                trial: t,
                x_l,
                conditionals,
                x_r,
                marginal_deviation,
            })
        })
        .collect()
}

/// `Pr(q >= 2^-(m+1))` over one conditional per draw; passes iff the
/// fraction is at least `1/12 - 3 SE`.
pub fn corollary3_report(m: usize, draws: &[ConditionalDraw]) -> Report {
    let thr = 1.0 / (1u64 << (m + 1)) as f64;
    let n = draws.len() as f64;
    let hits = draws.iter().filter(|d| d.conditionals[d.x_r] >= thr).count() as f64;
    let frac = hits / n;
    let se = (frac * (1.0 - frac) / n).sqrt();
    Report::new(
        "corollary3_fraction",
        frac,
        Verdict::from_bool(frac >= COROLLARY3_BOUND - 3.0 * se),
    )
    .with_se(se)
    .with_reference(COROLLARY3_BOUND)
    .param("threshold", thr)
    .param("m", m as f64)
}

/// Max deviation between `exp(-i H_ac)` and the CZ product, up to global phase.
pub fn hamiltonian_cz_deviation(m: usize, conventions: &QuenchConventions) -> Result<f64> {
    conventions.validate()?;
    let lattice = LatticeSpec::new(m)?;
    let roles = assign_roles(&lattice, conventions);
    let sub = build_interaction_sublattice(&lattice, &roles, conventions);
    let h = hamiltonian_phases(lattice.n(), &sub)?;
    let cz = cz_phases(lattice.n(), &sub)?;
    Ok(phase_deviation(&h, &cz))
}

pub fn cmd_quench(opts: &QuenchOptions) -> Result<QuenchOutput> {
    if opts.m > MAX_EXACT_M {
        return Err(Error::Resource(format!(
            "quench is limited to m <= {MAX_EXACT_M}, got {}",
            opts.m
        )));
    }
    if opts.trials == 0 {
        return Err(Error::Input("trials must be >= 1".into()));
    }
    let lattice = export_lattice(opts.m, &opts.conventions)?;
    let spec = LatticeSpec::new(opts.m)?;
    let roles = assign_roles(&spec, &opts.conventions);
    let draws = quench_conditional_draws(opts.m, opts.conventions, opts.trials, opts.seed)?;
    let marginal_max_deviation = draws.iter().map(|d| d.marginal_deviation).fold(0.0, f64::max);
    let hamiltonian_deviation = if opts.verify_hamiltonian {
        Some(hamiltonian_cz_deviation(opts.m, &opts.conventions)?)
    } else {
        None
    };
    let json = serde_json::to_string(opts)?;
    let config_hash = {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(json.as_bytes()))
    };
    Ok(QuenchOutput {
        report: QuenchReport {
            tool_version: TOOL_VERSION.to_string(),
            config_hash,
            options: opts.clone(),
            lattice,
            family_size_log2: crate::quench::family_size(&roles).trailing_zeros(),
            marginal_max_deviation,
            corollary3: corollary3_report(opts.m, &draws),
            hamiltonian_deviation,
        },
        draws,
    })
}
