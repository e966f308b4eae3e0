//! Scenario files, seeded trials, batch aggregation and reports.

use thiserror::Error;

pub mod batch;
pub mod config;
pub mod report;
pub mod suites;
pub mod trial;

pub use batch::{run_batch, summarize, BatchSummary, THREADS_ENV};
pub use config::{two_mountains, DecisionParams, ScenarioConfig, WorldParams};
pub use report::{report, ReportFormat, CSV_HEADER};
pub use suites::{suite, SUITES};
pub use trial::{initial_world, run_trial, trial_seed, Trial, TrialMetrics};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("invalid scenario: {0}")]
    Config(String),
    #[error("trial {index}: {msg}")]
    Trial { index: u64, msg: String },
    #[error("scenario '{scenario}': {} trial(s) failed; first: trial {}: {}", failures.len(), failures[0].0, failures[0].1)]
    Batch { scenario: String, failures: Vec<(u64, String)> },
    #[error("nothing to report")]
    EmptyInput,
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}
