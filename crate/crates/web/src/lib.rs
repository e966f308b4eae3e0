//! Browser bindings: solve a matrix game, walk the decision tree for a
//! hand-built encounter, and step a simulated round.

use gut_core::explore::{
    three_level_tree, AlienView, AllyView, CombatParams, ExploreContext, Outcome, Side, UtilityCoeffs, Vec2,
};
use gut_core::gut::descend;
use gut_core::harness::{two_mountains, ScenarioConfig, Trial};
use gut_core::matgame::{format_solution, parse_matrix, solve, DEFAULT_EPS};
use gut_core::policy::PolicyKind;
use wasm_bindgen::prelude::*;

/// Solves a game given as text ("rows cols" then one row per line).
pub fn solve_text(text: &str) -> Result<String, String> {
    let m = parse_matrix(text).map_err(|e| e.to_string())?;
    let s = solve(&m, DEFAULT_EPS).map_err(|e| e.to_string())?;
    Ok(format_solution(&s))
}

/// Descends the three-level tree for `explorers` allies facing `aliens`
/// aliens `distance` apart, one line per level plus the joint probability.
pub fn descend_text(
    explorers: usize,
    aliens: usize,
    explorer_energy: f64,
    alien_energy: f64,
    distance: f64,
) -> Result<String, String> {
    if explorers == 0 || aliens == 0 {
        return Err("need at least one explorer and one alien".into());
    }
    let combat = CombatParams::default();
    let column = |i: usize, n: usize, x: f64| Vec2::new(x, 5.0 + 0.3 * (i as f64 - (n as f64 - 1.0) / 2.0));
    let ctx = ExploreContext {
        allies: (0..explorers)
            .map(|i| AllyView {
                id: i,
                position: column(i, explorers, 2.0),
                energy: explorer_energy,
                hp: 100.0,
            })
            .collect(),
        aliens: (0..aliens)
            .map(|i| AlienView {
                id: explorers + i,
                position: column(i, aliens, 2.0 + distance),
                hp: 100.0,
                energy: alien_energy,
                unit_cost: combat.alien_attack_energy,
            })
            .collect(),
        coeffs: UtilityCoeffs::default(),
        explorer_phi: 0.5,
        alien_phi: 0.5,
        explorer_unit_cost: combat.explorer_attack_energy,
    };
    let series = descend(&three_level_tree(), &ctx, DEFAULT_EPS).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for l in &series.levels {
        out.push_str(&format!(
            "level {}: explorers {} vs aliens {} (p = {:.3}, value {:.4})\n",
            l.level, l.row_label, l.col_label, l.probability, l.solution.value
        ));
    }
    out.push_str(&format!("joint probability: {:.4}\n", series.joint_probability));
    Ok(out)
}

#[wasm_bindgen]
pub fn solve_matrix(text: &str) -> Result<String, JsError> {
    solve_text(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn descend_explore(
    explorers: usize,
    aliens: usize,
    explorer_energy: f64,
    alien_energy: f64,
    distance: f64,
) -> Result<String, JsError> {
    descend_text(explorers, aliens, explorer_energy, alien_energy, distance).map_err(|e| JsError::new(&e))
}

/// A round that the page advances and draws frame by frame.
#[wasm_bindgen]
pub struct Simulation {
    trial: Trial,
    outcome: Outcome,
}

impl Simulation {
    pub fn create(explorers: usize, aliens: usize, policy: &str, obstacles: bool, seed: u32) -> Result<Self, String> {
        let mut cfg = ScenarioConfig {
            explorers,
            aliens,
            policy: policy.parse::<PolicyKind>().map_err(|e| e.to_string())?,
            seed: seed.into(),
            ..Default::default()
        };
        if obstacles {
            cfg.arena.obstacles = two_mountains();
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(Self {
            trial: Trial::new(&cfg, 0).map_err(|e| e.to_string())?,
            outcome: Outcome::Ongoing,
        })
    }

    pub fn advance(&mut self, ticks: u32) -> Result<(), String> {
        for _ in 0..ticks {
            self.outcome = self.trial.advance().map_err(|e| e.to_string())?;
            if self.outcome != Outcome::Ongoing {
                break;
            }
        }
        Ok(())
    }
}

#[wasm_bindgen]
impl Simulation {
    #[wasm_bindgen(constructor)]
    pub fn new(explorers: usize, aliens: usize, policy: &str, obstacles: bool, seed: u32) -> Result<Simulation, JsError> {
        Self::create(explorers, aliens, policy, obstacles, seed).map_err(|e| JsError::new(&e))
    }

    /// Plays up to `ticks` ticks, stopping early once the round is decided.
    pub fn step(&mut self, ticks: u32) -> Result<(), JsError> {
        self.advance(ticks).map_err(|e| JsError::new(&e))
    }

    /// `[x, y, is_alien, alive, hp]` per agent, flattened.
    pub fn agents(&self) -> Vec<f64> {
        self.trial
            .world()
            .agents
            .iter()
            .flat_map(|a| {
                [
                    a.position.x,
                    a.position.y,
                    f64::from(u8::from(a.side == Side::Alien)),
                    f64::from(u8::from(a.alive)),
                    a.hp,
                ]
            })
            .collect()
    }

    /// `[x, y, r]` per obstacle, flattened.
    pub fn obstacles(&self) -> Vec<f64> {
        self.trial
            .world()
            .arena
            .obstacles
            .iter()
            .flat_map(|o| [o.center.x, o.center.y, o.radius])
            .collect()
    }

    /// `[width, height, treasure_x, treasure_y, treasure_radius]`.
    pub fn arena(&self) -> Vec<f64> {
        let a = &self.trial.world().arena;
        vec![a.width, a.height, a.treasure.x, a.treasure.y, a.treasure_radius]
    }

    pub fn tick(&self) -> u32 {
        self.trial.world().tick.try_into().unwrap_or(u32::MAX)
    }

    pub fn status(&self) -> String {
        let m = self.trial.metrics();
        let state = match self.outcome {
            Outcome::Ongoing => "ongoing",
            Outcome::ExplorersWin => "explorers win",
            Outcome::AliensWin => "aliens win",
            Outcome::Draw => "draw",
        };
        format!(
            "tick {} | {state} | explorers lost {} | aliens killed {} | team energy cost {:.1} | team HP cost {:.1}",
            m.ticks, m.explorers_lost, m.aliens_killed, m.system_energy_cost, m.system_hp_cost
        )
    }
}
