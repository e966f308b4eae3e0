//! One seeded trial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::explore::{outcome, step, AgentState, Outcome, Side, WorldState};
use crate::policy::{alien_policy, ExplorerController};

use super::config::ScenarioConfig;
use super::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialMetrics {
    pub win: bool,
    pub draw: bool,
    pub ticks: u64,
    /// Per explorer, in percent.
    pub mean_explorer_energy_cost: f64,
    pub mean_explorer_hp_cost: f64,
    /// Summed over the whole explorer team.
    pub system_energy_cost: f64,
    pub system_hp_cost: f64,
    pub explorers_lost: usize,
    pub aliens_killed: usize,
}

/// Builds the starting world for a trial.
pub fn initial_world(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<WorldState, HarnessError> {
    let w = &cfg.world;
    let mut world = WorldState::spawn(
        cfg.arena.clone(),
        cfg.explorers,
        cfg.aliens,
        w.explorer_region,
        w.alien_region,
        w.sense_radius,
        w.attack_radius,
        rng,
    )
    .map_err(|e| HarnessError::Config(e.to_string()))?;
    world.tick_limit = cfg.tick_limit;
    world.speed = w.speed;
    let place = |agents: &mut [AgentState], pts: &Option<Vec<crate::explore::Vec2>>| {
        if let Some(pts) = pts {
            for (a, p) in agents.iter_mut().zip(pts) {
                a.position = *p;
            }
        }
    };
    let (ex, al) = world.agents.split_at_mut(cfg.explorers);
    place(ex, &w.explorer_positions);
    place(al, &w.alien_positions);
    for a in al.iter_mut() {
        a.sense_radius = w.alien_sense_radius;
        a.attack_radius = w.alien_attack_radius;
    }
    if let Some(hp) = w.initial_alien_hp {
        for a in al.iter_mut() {
            a.hp = hp.clamp(0.0, 100.0);
            a.alive = a.hp > 0.0;
        }
    }
    if world.agents.iter().any(|a| !world.arena.in_bounds(a.position)) {
        return Err(HarnessError::Config("fixed spawn point out of bounds".into()));
    }
    Ok(world)
}

pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

/// A trial in progress, advanced one tick at a time.
pub struct Trial {
    cfg: ScenarioConfig,
    index: u64,
    world: WorldState,
    controller: ExplorerController,
    rng: ChaCha8Rng,
    initial_aliens: usize,
}

impl Trial {
    /// Sets up trial `index` of `cfg`. Deterministic in `(cfg, index)`.
    pub fn new(cfg: &ScenarioConfig, index: u64) -> Result<Self, HarnessError> {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, index));
        let world = initial_world(cfg, &mut rng)?;
        Ok(Self {
            initial_aliens: world.living_count(Side::Alien),
            controller: ExplorerController::new(cfg.policy, cfg.policy_params()),
            cfg: cfg.clone(),
            index,
            world,
            rng,
        })
    }

    pub fn world(&self) -> &WorldState {
        &self.world
    }

    /// Plays one tick unless the round is already decided; returns the
    /// outcome afterwards.
    pub fn advance(&mut self) -> Result<Outcome, HarnessError> {
        let o = outcome(&self.world);
        if o != Outcome::Ongoing {
            return Ok(o);
        }
        let index = self.index;
        let wrap = |e: String| HarnessError::Trial { index, msg: e };
        let cfg = &self.cfg;
        let mut cmds = self
            .controller
            .commands(&mut self.world, &mut self.rng)
            .map_err(|e| wrap(e.to_string()))?;
        cmds.extend(alien_policy(&self.world, cfg.alien_mode, cfg.utility.a, &mut self.rng));
        let ev = step(&mut self.world, &cmds, &cfg.combat).map_err(|e| wrap(e.to_string()))?;
        self.controller.observe(&ev, &self.world);
        Ok(outcome(&self.world))
    }

    /// Costs and casualties so far.
    pub fn metrics(&self) -> TrialMetrics {
        let result = outcome(&self.world);
        let explorers: Vec<&AgentState> = self.world.agents.iter().filter(|a| a.side == Side::Explorer).collect();
        let system_energy_cost: f64 = explorers.iter().map(|a| 100.0 - a.energy).sum();
        let system_hp_cost: f64 = explorers.iter().map(|a| 100.0 - a.hp).sum();
        let n = explorers.len() as f64;
        TrialMetrics {
            win: result == Outcome::ExplorersWin,
            draw: result == Outcome::Draw,
            ticks: self.world.tick,
            mean_explorer_energy_cost: system_energy_cost / n,
            mean_explorer_hp_cost: system_hp_cost / n,
            system_energy_cost,
            system_hp_cost,
            explorers_lost: explorers.iter().filter(|a| !a.alive).count(),
            aliens_killed: self.initial_aliens - self.world.living_count(Side::Alien),
        }
    }
}

/// Runs trial `index` of `cfg` to completion. Deterministic in `(cfg, index)`.
pub fn run_trial(cfg: &ScenarioConfig, index: u64) -> Result<TrialMetrics, HarnessError> {
    let mut trial = Trial::new(cfg, index)?;
    while trial.advance()? == Outcome::Ongoing {}
    Ok(trial.metrics())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::Vec2;

    #[test]
    fn dead_aliens_and_explorer_on_treasure_win_at_once() {
        let mut cfg = ScenarioConfig {
            explorers: 1,
            aliens: 1,
            ..Default::default()
        };
        cfg.world.initial_alien_hp = Some(0.0);
        cfg.world.explorer_positions = Some(vec![cfg.arena.treasure]);
        let m = run_trial(&cfg, 0).unwrap();
        assert!(m.win && !m.draw);
        assert_eq!(m.ticks, 0);
        assert_eq!(m.system_energy_cost, 0.0);
        assert_eq!(m.system_hp_cost, 0.0);
        assert_eq!(m.explorers_lost, 0);
    }

    #[test]
    fn tick_limit_one_is_a_draw() {
        let mut cfg = ScenarioConfig {
            explorers: 2,
            aliens: 2,
            tick_limit: 1,
            ..Default::default()
        };
        cfg.world.explorer_positions = Some(vec![Vec2::new(0.5, 0.5), Vec2::new(0.7, 0.5)]);
        cfg.world.alien_positions = Some(vec![Vec2::new(9.5, 9.5), Vec2::new(9.3, 9.5)]);
        let m = run_trial(&cfg, 0).unwrap();
        assert!(m.draw && !m.win);
        assert_eq!(m.ticks, 1);
    }

    #[test]
    fn trials_are_deterministic() {
        let cfg = ScenarioConfig {
            explorers: 5,
            aliens: 5,
            tick_limit: 400,
            ..Default::default()
        };
        assert_eq!(run_trial(&cfg, 3).unwrap(), run_trial(&cfg, 3).unwrap());
    }
}
