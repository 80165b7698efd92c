//! Smoothing, exponential sums over primes, and discrepancy.

mod discrepancy;
mod smoothing;
mod sums;

pub use discrepancy::{discrepancy, discrepancy_beatty, discrepancy_quadratic, BeattyDiscrepancy, SamplePoints};
pub use smoothing::{coefficient_bound, default_truncation, psi_indicator, tail_bound, PsiDelta};
pub use sums::{
    progression_sum_bound, bound_ratio_report, exp_sum_ap, exp_sum_shifted, lambda_mass_shifted,
    substitution_identity_check, triplesplit_check, BoundRatioReport, BoundRatioRow, IdentityCheck,
    TriplesplitCheck,
};
