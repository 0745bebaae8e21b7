//! Run-wide configuration: tolerances, precision, threading, seeding.

use serde::{Deserialize, Serialize};

/// Knobs shared by the CLI subcommands and the randomized checks.
///
/// The seed is recorded in every JSON artifact so identical configurations
/// reproduce byte-identical output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    /// Generic numeric tolerance (group closure, orbit dedup checks).
    pub tol: f64,
    /// Significant digits for high-precision root polishing (>= 15).
    pub digits: u32,
    /// Worker threads; `None` leaves the global pool untouched.
    pub threads: Option<usize>,
    /// Seed for every randomized sample in the pipeline.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol: 1e-10,
            digits: 30,
            threads: None,
            seed: 1728,
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        RunConfig {
            seed,
            ..Self::default()
        }
    }

    /// Clamp user input to sane ranges.
    pub fn sanitized(mut self) -> Self {
        if self.digits < 15 {
            self.digits = 15;
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            self.tol = 1e-10;
        }
        self
    }
}
