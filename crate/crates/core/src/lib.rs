//! Hierarchical zero-sum decision making for cooperative teams facing
//! adversaries, and the explorers-vs-aliens arena used to evaluate it.
//!
//! - [`matgame`]: two-player zero-sum matrix games.
//! - [`needs`]: five-level agent needs and relation classification.
//! - [`gut`]: game-theoretic utility trees.
//! - [`explore`]: the arena simulator, utilities and payoff builders.
//! - [`policy`]: explorer and alien decision policies.
//! - [`harness`]: scenarios, batch trials and reports.

pub mod explore;
pub mod gut;
pub mod harness;
pub mod matgame;
pub mod needs;
pub mod policy;
