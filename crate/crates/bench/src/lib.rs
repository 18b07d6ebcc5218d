//! Shared fixtures for the kernel benchmarks.

use qdf_core::{BellDiagonal, NoiseSchedule, Spectrum};

/// The strictly ordered benchmark state used throughout the test suites.
pub fn benchmark_state() -> BellDiagonal {
    Spectrum::new(0.75, 0.1875, 0.05, 0.0125)
        .expect("fixture is physical")
        .correlations()
}

/// Underdamped random telegraph schedule with gamma/omega = 1/32.
pub fn benchmark_schedule() -> NoiseSchedule {
    NoiseSchedule::random_telegraph(1025f64.sqrt() / 2.0, 1.0).expect("underdamped")
}
