//! Scenario-driven verification of equivariant partition and tree complexes.
//!
//! A scenario names a permutation group, a G-set written as an orbit sum and
//! a list of checks; [`run_scenario`] runs them and collects a [`Report`].

pub mod checks;
pub mod report;
pub mod sampling;
pub mod scenario;

pub use checks::{CheckId, CheckOutcome, RunConfig, Verdict};
pub use report::Report;
pub use scenario::{parse_scenario, Scenario, ScenarioError};

use rayon::prelude::*;

/// Runs the scenario's checks, in parallel up to `config.workers` threads.
pub fn run_scenario(scenario: &Scenario, config: RunConfig) -> Report {
    let ctx = checks::Context::new(scenario, config);
    let run = || -> Vec<CheckOutcome> {
        scenario
            .checks
            .par_iter()
            .map(|&id| checks::run_check(id, &ctx))
            .collect()
    };
    let outcomes = if config.workers > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    } else {
        run()
    };
    Report::new(scenario, config, outcomes)
}
