//! Statistics turning probability samples into verdicts.

mod anticonc;
mod design;
mod ks;
mod moments;
mod report;
mod sample;

pub use anticonc::{
    anticonc_fraction, fraction_at_least, moments_reports, paley_zygmund_check, theorem1_bound, threshold_fraction,
    wilson_interval, WILSON_Z_99,
};
pub use design::{
    delta2, design_convergence_scan, scan_to_csv, state_2design_diagnostic, ScanRow, SCAN_ALPHA, SCAN_DELTA2_TOL,
};
pub use ks::{
    ks_porter_thomas, ks_statistic, two_sample_ks, two_sample_ks_statistic, two_sample_threshold, KS_C_001, KS_TIE_TOL,
};
pub use moments::{empirical_moments, Moments};
pub use report::{Report, Verdict};
pub use sample::{ProbSample, SampleMeta};
