//! Densities, structural classifiers, and the property-transfer suite.

mod ap;
mod classify;
mod density;
mod suite;

pub use ap::{diff_member, difference_window, find_ap, shifted_intersection};
pub use classify::{classify, is_piecewise_syndetic, is_syndetic, is_thick, max_run, runs_and_gaps, StructureReport};
pub use density::{
    density_report, density_samples, exact_density, max_window_count, q_peak_points, samples_csv, DensityReport,
    Rational, Sample,
};
pub use suite::{
    property_suite, run_suite, small_shift_families, CheckResult, CheckStatus, SuiteConfig, SuiteReport, SuiteRun,
};
