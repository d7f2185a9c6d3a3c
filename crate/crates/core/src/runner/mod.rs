//! Named experiments, suites and parameter sweeps.

mod config;
mod experiments;
mod suite;

pub use config::{ExperimentConfig, SuiteConfig, SuiteLevel};
pub use experiments::{is_monte_carlo, run, run_once, EXPERIMENTS};
pub use suite::{run_suite, suite_configs, sweep, sweep_csv, SuiteReport, SweepRow};
