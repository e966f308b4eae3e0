//! The explorers-vs-aliens arena: geometry, utilities, formations, the
//! tick simulator and the level payoff builders used by the decision trees.

use thiserror::Error;

pub mod formation;
pub mod geometry;
pub mod payoff;
pub mod utility;
pub mod world;

pub use formation::{formation_targets, Formation, FormationKind};
pub use geometry::{avoid_obstacles, Circle, Vec2};
pub use payoff::{
    build_level1, build_level2, build_level2_multi, build_level2_single, build_level3, three_level_tree, two_level_tree,
    AlienView, AllyView, ExploreContext, TargetRule,
};
pub use utility::{energy_utility, hp_utility, win_probability, winning_utility, HitRate, UtilityCoeffs};
pub use world::{
    outcome, parse_snapshot, snapshot, step, AgentState, ArenaConfig, CombatParams, Command, Hit, Outcome, Region, Side,
    StepEvents, WorldState,
};

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("goal lies inside an obstacle")]
    NoPath,
    #[error("unknown agent {0}")]
    UnknownAgent(usize),
    #[error("formation needs at least one member")]
    EmptyGroup,
    #[error("invalid arena: {0}")]
    InvalidArena(String),
    #[error("snapshot line {line}: {msg}")]
    Snapshot { line: usize, msg: String },
}
