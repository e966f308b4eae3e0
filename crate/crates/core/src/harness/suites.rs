//! Bundled scenario sets mirroring the experiment tables.

use crate::policy::{AlienMode, InfoMode, PolicyKind};

use super::config::{two_mountains, ScenarioConfig};
use super::HarnessError;

pub const SUITES: [&str; 3] = ["paper-table4", "paper-table5", "paper-table8"];

const TABLE4_RATIOS: [(usize, usize); 3] = [(20, 30), (25, 25), (30, 20)];
const TABLE4_POLICIES: [PolicyKind; 4] = [
    PolicyKind::GutNC,
    PolicyKind::GreedyQmixPC,
    PolicyKind::GutPC,
    PolicyKind::GutFC,
];
const TABLE5_RATIOS: [(usize, usize); 5] = [(20, 30), (20, 25), (25, 25), (25, 20), (30, 20)];
const TABLE8_RATIOS: [(usize, usize, bool); 3] = [(1, 1, false), (1, 2, false), (4, 3, true)];
const TABLE8_POLICIES: [PolicyKind; 3] = [PolicyKind::RandomBaseline, PolicyKind::GreedyOneLevel, PolicyKind::GutFC];

const ROBOT_ALIEN_SCALE: f64 = 1.5;

fn base(name: String, e: usize, a: usize, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        name,
        explorers: e,
        aliens: a,
        seed,
        trials: 10,
        ..Default::default()
    }
}

/// Team-size comparison of the four cooperation policies.
pub fn table4_scenario(e: usize, a: usize, policy: PolicyKind, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        policy,
        ..base(format!("{e}v{a}"), e, a, seed)
    }
}

/// Information-mode comparison under full cooperation.
pub fn table5_scenario(e: usize, a: usize, info: InfoMode, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        info,
        ..base(format!("{e}v{a}"), e, a, seed)
    }
}

/// The obstacle row: greedy aliens in the two-obstacle arena.
pub fn table5_obstacle_scenario(info: InfoMode, obstacles: bool, seed: u64) -> ScenarioConfig {
    let mut c = ScenarioConfig {
        info,
        alien_mode: AlienMode::Greedy,
        ..base("25v25-obstacles".into(), 25, 25, seed)
    };
    if obstacles {
        c.arena.obstacles = two_mountains();
    } else {
        c.name = "25v25-open".into();
    }
    c
}

/// Small-team comparison against the one-level baselines, with greedy
/// aliens at robot-scale constants.
pub fn table8_scenario(e: usize, a: usize, obstacles: bool, policy: PolicyKind, seed: u64) -> ScenarioConfig {
    let mut c = ScenarioConfig {
        policy,
        ..base(format!("{e}v{a}"), e, a, seed)
    };
    c.decision.two_level = policy == PolicyKind::GutFC;
    c.alien_mode = AlienMode::Greedy;
    // Robot-scale constants: 0.1 energy per step, 0.3 HP per hit, and
    // aliens with 1.5x the explorers' energy and HP pools.
    c.combat.explorer_step_energy = 0.1;
    c.combat.alien_step_energy = 0.1 / ROBOT_ALIEN_SCALE;
    c.combat.explorer_attacked_hp = 0.3;
    c.combat.alien_attacked_hp = 0.3 / ROBOT_ALIEN_SCALE;
    if obstacles {
        c.arena.obstacles = two_mountains();
        c.name.push_str("-obstacles");
    }
    c
}

pub fn suite(name: &str, seed: u64) -> Result<Vec<ScenarioConfig>, HarnessError> {
    let out = match name {
        "paper-table4" => TABLE4_RATIOS
            .iter()
            .flat_map(|&(e, a)| TABLE4_POLICIES.iter().map(move |&p| table4_scenario(e, a, p, seed)))
            .collect(),
        "paper-table5" => {
            let mut v: Vec<ScenarioConfig> = TABLE5_RATIOS
                .iter()
                .flat_map(|&(e, a)| InfoMode::ALL.iter().map(move |&i| table5_scenario(e, a, i, seed)))
                .collect();
            v.extend(InfoMode::ALL.iter().map(|&i| table5_obstacle_scenario(i, true, seed)));
            v
        }
        "paper-table8" => TABLE8_RATIOS
            .iter()
            .flat_map(|&(e, a, o)| TABLE8_POLICIES.iter().map(move |&p| table8_scenario(e, a, o, p, seed)))
            .collect(),
        _ => return Err(HarnessError::UnknownSuite(name.to_string())),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_shapes() {
        assert_eq!(suite("paper-table4", 0).unwrap().len(), 12);
        assert_eq!(suite("paper-table5", 0).unwrap().len(), 18);
        assert_eq!(suite("paper-table8", 0).unwrap().len(), 9);
        assert!(suite("nope", 0).is_err());
        for s in SUITES {
            for c in suite(s, 7).unwrap() {
                c.validate().unwrap();
                assert_eq!(c.seed, 7);
            }
        }
    }
}
