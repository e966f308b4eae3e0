//! Five-level agent needs expectations and the adversary/friendly/neutral
//! relation derived from them.
//!
//! Each level's need is the expectation of its feature values under feature
//! probabilities. Levels are conditioned on the level below; callers supply
//! probabilities that are already conditioned that way.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

/// Default tolerance below which a change in needs counts as no change.
pub const NEUTRAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NeedsError {
    #[error("{level} level has {values} values but {probabilities} probabilities")]
    LengthMismatch {
        level: Level,
        values: usize,
        probabilities: usize,
    },
    #[error("{level} level probability {p} is outside [0, 1]")]
    BadProbability { level: Level, p: f64 },
    #[error("levels must be given in order safety..learning, found {found} at position {position}")]
    LevelOrder { position: usize, found: Level },
    #[error("team needs require at least one agent")]
    EmptyTeam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Safety,
    Basic,
    Capability,
    Teaming,
    Learning,
}

impl Level {
    pub const ALL: [Level; 5] = [
        Level::Safety,
        Level::Basic,
        Level::Capability,
        Level::Teaming,
        Level::Learning,
    ];
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Safety => "safety",
            Level::Basic => "basic",
            Level::Capability => "capability",
            Level::Teaming => "teaming",
            Level::Learning => "learning",
        })
    }
}

/// Feature values of one needs level with their (conditional) probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelFeatures {
    pub level: Level,
    pub values: Vec<f64>,
    pub probabilities: Vec<f64>,
}

impl LevelFeatures {
    pub fn new(level: Level, values: Vec<f64>, probabilities: Vec<f64>) -> Self {
        Self {
            level,
            values,
            probabilities,
        }
    }

    pub fn empty(level: Level) -> Self {
        Self::new(level, Vec::new(), Vec::new())
    }

    fn validate(&self) -> Result<(), NeedsError> {
        if self.values.len() != self.probabilities.len() {
            return Err(NeedsError::LengthMismatch {
                level: self.level,
                values: self.values.len(),
                probabilities: self.probabilities.len(),
            });
        }
        if let Some(&p) = self
            .probabilities
            .iter()
            .find(|p| !(0.0..=1.0).contains(*p))
        {
            return Err(NeedsError::BadProbability {
                level: self.level,
                p,
            });
        }
        Ok(())
    }
}

/// Expected need of one level: `sum_i value_i * probability_i`.
pub fn level_need(f: &LevelFeatures) -> Result<f64, NeedsError> {
    f.validate()?;
    Ok(f.values
        .iter()
        .zip(&f.probabilities)
        .map(|(v, p)| v * p)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeedsProfile {
    pub safety: f64,
    pub basic: f64,
    pub capability: f64,
    pub teaming: f64,
    pub learning: f64,
}

impl NeedsProfile {
    pub fn new(safety: f64, basic: f64, capability: f64, teaming: f64, learning: f64) -> Self {
        Self {
            safety,
            basic,
            capability,
            teaming,
            learning,
        }
    }

    /// Scalar reduction used for classification: the unweighted sum of levels.
    pub fn total(&self) -> f64 {
        self.safety + self.basic + self.capability + self.teaming + self.learning
    }

    pub fn get(&self, level: Level) -> f64 {
        match level {
            Level::Safety => self.safety,
            Level::Basic => self.basic,
            Level::Capability => self.capability,
            Level::Teaming => self.teaming,
            Level::Learning => self.learning,
        }
    }
}

impl Add for NeedsProfile {
    type Output = NeedsProfile;

    fn add(self, o: NeedsProfile) -> NeedsProfile {
        NeedsProfile {
            safety: self.safety + o.safety,
            basic: self.basic + o.basic,
            capability: self.capability + o.capability,
            teaming: self.teaming + o.teaming,
            learning: self.learning + o.learning,
        }
    }
}

/// Bundles the five level needs. `levels` must run safety through learning.
pub fn profile(levels: &[LevelFeatures; 5]) -> Result<NeedsProfile, NeedsError> {
    let mut out = [0.0; 5];
    for (position, (f, expected)) in levels.iter().zip(Level::ALL).enumerate() {
        if f.level != expected {
            return Err(NeedsError::LevelOrder {
                position,
                found: f.level,
            });
        }
        out[position] = level_need(f)?;
    }
    Ok(NeedsProfile::new(out[0], out[1], out[2], out[3], out[4]))
}

/// Collective needs of a team: the component-wise sum of member profiles.
pub fn team_need(profiles: &[NeedsProfile]) -> Result<NeedsProfile, NeedsError> {
    let (first, rest) = profiles.split_first().ok_or(NeedsError::EmptyTeam)?;
    Ok(rest.iter().fold(*first, |acc, p| acc + *p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Friendly,
    Neutral,
    Adversary,
}

/// Classifies another agent by how its presence changes this agent's needs.
///
/// Needs that rise by more than `tol` mark an adversary, needs that fall by
/// more than `tol` mark a friend.
pub fn classify_relation(needs_without: f64, needs_with: f64, tol: f64) -> Relation {
    let d = needs_with - needs_without;
    if d > tol {
        Relation::Adversary
    } else if d < -tol {
        Relation::Friendly
    } else {
        Relation::Neutral
    }
}
