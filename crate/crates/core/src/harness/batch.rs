//! Batches of trials and their aggregate metrics.

use serde::{Deserialize, Serialize};

use crate::policy::{AlienMode, InfoMode, PolicyKind};

use super::config::ScenarioConfig;
use super::trial::{run_trial, TrialMetrics};
use super::HarnessError;

/// Environment variable holding the worker-thread count for [`run_batch`].
pub const THREADS_ENV: &str = "GUT_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub scenario: String,
    pub policy: PolicyKind,
    pub info: InfoMode,
    pub alien_mode: AlienMode,
    pub explorers: usize,
    pub aliens: usize,
    pub obstacles: usize,
    pub trials: usize,
    pub wins: usize,
    pub draws: usize,
    pub win_rate: f64,
    /// Mean team energy cost over winning rounds.
    pub c_se_per_win: Option<f64>,
    /// Mean team HP cost over winning rounds.
    pub c_shp_per_win: Option<f64>,
    pub explorers_lost_per_win: Option<f64>,
    /// Means over every round, won or not.
    pub explorers_lost_per_round: f64,
    pub mean_system_energy_cost: f64,
    pub mean_system_hp_cost: f64,
    /// Explorers lost per alien killed (absent with no kills).
    pub lost_per_kill: Option<f64>,
    /// Explorers lost per alien fielded.
    pub lost_per_alien: f64,
    /// Mean explorer HP cost per alien killed (absent with no kills).
    pub hp_cost_per_kill: Option<f64>,
    /// Mean explorer HP cost per alien fielded.
    pub hp_cost_per_alien: f64,
    pub records: Vec<TrialMetrics>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Aggregates per-trial records, in order.
pub fn summarize(cfg: &ScenarioConfig, records: Vec<TrialMetrics>) -> Result<BatchSummary, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyInput);
    }
    let wins: Vec<&TrialMetrics> = records.iter().filter(|r| r.win).collect();
    let n = records.len() as f64;
    let lost: usize = records.iter().map(|r| r.explorers_lost).sum();
    let killed: usize = records.iter().map(|r| r.aliens_killed).sum();
    let hp: f64 = records.iter().map(|r| r.mean_explorer_hp_cost).sum();
    let fielded = (records.len() * cfg.aliens) as f64;
    Ok(BatchSummary {
        scenario: cfg.name.clone(),
        policy: cfg.policy,
        info: cfg.info,
        alien_mode: cfg.alien_mode,
        explorers: cfg.explorers,
        aliens: cfg.aliens,
        obstacles: cfg.arena.obstacles.len(),
        trials: records.len(),
        wins: wins.len(),
        draws: records.iter().filter(|r| r.draw).count(),
        win_rate: wins.len() as f64 / n,
        c_se_per_win: mean(wins.iter().map(|r| r.system_energy_cost)),
        c_shp_per_win: mean(wins.iter().map(|r| r.system_hp_cost)),
        explorers_lost_per_win: mean(wins.iter().map(|r| r.explorers_lost as f64)),
        explorers_lost_per_round: lost as f64 / n,
        mean_system_energy_cost: records.iter().map(|r| r.system_energy_cost).sum::<f64>() / n,
        mean_system_hp_cost: records.iter().map(|r| r.system_hp_cost).sum::<f64>() / n,
        lost_per_kill: (killed > 0).then(|| lost as f64 / killed as f64),
        lost_per_alien: lost as f64 / fielded,
        hp_cost_per_kill: (killed > 0).then(|| hp / killed as f64),
        hp_cost_per_alien: hp / fielded,
        records,
    })
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

#[cfg(feature = "parallel")]
fn run_all(cfg: &ScenarioConfig) -> Vec<Result<TrialMetrics, HarnessError>> {
    use rayon::prelude::*;
    let work = || {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|i| run_trial(cfg, i))
            .collect()
    };
    match thread_count().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(work),
        None => work(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_all(cfg: &ScenarioConfig) -> Vec<Result<TrialMetrics, HarnessError>> {
    let _ = thread_count();
    (0..cfg.trials as u64).map(|i| run_trial(cfg, i)).collect()
}

/// Runs trials `0..cfg.trials`, possibly in parallel; output order and
/// content do not depend on the thread count.
pub fn run_batch(cfg: &ScenarioConfig) -> Result<BatchSummary, HarnessError> {
    cfg.validate()?;
    let mut records = Vec::with_capacity(cfg.trials);
    let mut failures = Vec::new();
    for (i, r) in run_all(cfg).into_iter().enumerate() {
        match r {
            Ok(m) => records.push(m),
            Err(e) => failures.push((i as u64, e.to_string())),
        }
    }
    if !failures.is_empty() {
        return Err(HarnessError::Batch {
            scenario: cfg.name.clone(),
            failures,
        });
    }
    summarize(cfg, records)
}
