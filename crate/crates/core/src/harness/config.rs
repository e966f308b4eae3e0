//! Scenario description and its text format.
//!
//! A scenario file is TOML: top-level `key = value` pairs followed by
//! optional `[arena]`, `[world]`, `[combat]`, `[utility]`, `[regression]`,
//! `[baseline]`, `[motion]` and `[decision]` sections. Every key has a
//! default, so an empty file is a valid scenario.
//!
//! ```toml
//! name = "fc-20v30"
//! explorers = 20
//! aliens = 30
//! policy = "gut-fc"        # gut-nc | qmix-pc | gut-pc | gut-fc | random | greedy
//! alien_mode = "random"    # random | greedy
//! info = "complete"        # complete | linear | poly
//! trials = 10
//! seed = 0
//! tick_limit = 5000
//!
//! [arena]
//! obstacles = [{ center = { x = 5.0, y = 6.0 }, radius = 1.0 }]
//! ```

use serde::{Deserialize, Serialize};

use crate::explore::{ArenaConfig, Circle, CombatParams, Region, UtilityCoeffs, Vec2};
use crate::matgame::DEFAULT_EPS;
use crate::policy::{AlienMode, BaselineCoeffs, InfoMode, MotionParams, PolicyKind, PolicyParams, RegressionCoeffs};

use super::HarnessError;

/// Spawning and agent physics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorldParams {
    /// Distance covered per movement step.
    pub speed: f64,
    pub sense_radius: f64,
    pub attack_radius: f64,
    /// Aliens see three times as far as explorers by default.
    pub alien_sense_radius: f64,
    pub alien_attack_radius: f64,
    pub explorer_region: Region,
    pub alien_region: Region,
    /// Fixed start points; when given they replace random spawning for
    /// that side and must match its head count.
    pub explorer_positions: Option<Vec<Vec2>>,
    pub alien_positions: Option<Vec<Vec2>>,
    /// Starting alien HP; zero or less starts them dead.
    pub initial_alien_hp: Option<f64>,
}

impl Default for WorldParams {
    fn default() -> Self {
        Self {
            speed: 0.05,
            sense_radius: 1.0,
            attack_radius: 0.5,
            alien_sense_radius: 3.0,
            alien_attack_radius: 0.5,
            explorer_region: Region::new(0.5, 0.5, 4.5, 9.5),
            alien_region: Region::new(5.5, 0.5, 9.5, 9.5),
            explorer_positions: None,
            alien_positions: None,
            initial_alien_hp: None,
        }
    }
}

/// Decision-epoch and solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecisionParams {
    pub replan_interval: u64,
    pub min_replan_gap: u64,
    pub two_level: bool,
    pub eps: f64,
}

impl Default for DecisionParams {
    fn default() -> Self {
        Self {
            replan_interval: 10,
            min_replan_gap: 2,
            two_level: false,
            eps: DEFAULT_EPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub explorers: usize,
    pub aliens: usize,
    pub policy: PolicyKind,
    pub alien_mode: AlienMode,
    pub info: InfoMode,
    pub trials: usize,
    pub seed: u64,
    pub tick_limit: u64,
    pub arena: ArenaConfig,
    pub world: WorldParams,
    pub combat: CombatParams,
    pub utility: UtilityCoeffs,
    pub regression: RegressionCoeffs,
    pub baseline: BaselineCoeffs,
    pub motion: MotionParams,
    pub decision: DecisionParams,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            name: "scenario".into(),
            explorers: 20,
            aliens: 30,
            policy: PolicyKind::GutFC,
            alien_mode: AlienMode::Random,
            info: InfoMode::Complete,
            trials: 10,
            seed: 0,
            tick_limit: 5000,
            arena: ArenaConfig::default(),
            world: WorldParams::default(),
            combat: CombatParams::default(),
            utility: UtilityCoeffs::default(),
            regression: RegressionCoeffs::default(),
            baseline: BaselineCoeffs::default(),
            motion: MotionParams::default(),
            decision: DecisionParams::default(),
        }
    }
}

/// The two circular obstacles used by the obstacle scenarios.
pub fn two_mountains() -> Vec<Circle> {
    vec![Circle::new(5.0, 4.0, 1.0), Circle::new(5.0, 7.0, 1.0)]
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.explorers == 0 || self.aliens == 0 {
            return bad("explorers and aliens must both be at least 1");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.tick_limit == 0 {
            return bad("tick_limit must be at least 1");
        }
        let w = &self.world;
        if ![w.speed, w.sense_radius, w.attack_radius, w.alien_sense_radius, w.alien_attack_radius]
            .iter()
            .all(|&x| x > 0.0 && x.is_finite())
        {
            return bad("speed and all radii must be positive");
        }
        if let Some(p) = &w.explorer_positions {
            if p.len() != self.explorers {
                return bad("explorer_positions must list one point per explorer");
            }
        }
        if let Some(p) = &w.alien_positions {
            if p.len() != self.aliens {
                return bad("alien_positions must list one point per alien");
            }
        }
        if self.decision.replan_interval == 0 || !(self.decision.eps > 0.0) {
            return bad("replan_interval must be at least 1 and eps positive");
        }
        self.arena.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        self.combat.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        self.utility.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn policy_params(&self) -> PolicyParams {
        PolicyParams {
            coeffs: self.utility,
            regression: self.regression,
            baseline: self.baseline,
            combat: self.combat,
            info: self.info,
            motion: self.motion,
            replan_interval: self.decision.replan_interval,
            min_replan_gap: self.decision.min_replan_gap,
            two_level: self.decision.two_level,
            eps: self.decision.eps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_default() {
        assert_eq!(ScenarioConfig::parse("").unwrap(), ScenarioConfig::default());
    }

    #[test]
    fn round_trip() {
        let mut c = ScenarioConfig {
            name: "x".into(),
            policy: PolicyKind::GutNC,
            info: InfoMode::IncompletePoly,
            ..Default::default()
        };
        c.arena.obstacles = two_mountains();
        c.world.initial_alien_hp = Some(0.0);
        let back = ScenarioConfig::parse(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn sections_override_defaults() {
        let text = r#"
            explorers = 4
            aliens = 3
            policy = "greedy"
            [arena]
            obstacles = [{ center = { x = 5.0, y = 5.0 }, radius = 1.0 }]
            [combat]
            explorer_step_energy = 0.1
            [utility]
            a = 1.0
        "#;
        let c = ScenarioConfig::parse(text).unwrap();
        assert_eq!(c.policy, PolicyKind::GreedyOneLevel);
        assert_eq!(c.arena.obstacles.len(), 1);
        assert_eq!(c.combat.explorer_step_energy, 0.1);
        assert_eq!(c.combat.alien_attack_energy, 0.03);
        assert_eq!(c.utility.a, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ScenarioConfig::parse("trials = 0").is_err());
        assert!(ScenarioConfig::parse("policy = \"telepathy\"").is_err());
        assert!(ScenarioConfig::parse("no_such_key = 1").is_err());
        assert!(ScenarioConfig::parse("aliens = 0").is_err());
        assert!(ScenarioConfig::parse("[world]\nexplorer_positions = [{x = 1.0, y = 1.0}]").is_err());
    }
}
