//! Explorer team policies, the adversary-state predictors and the alien
//! behavior model.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::explore::{CombatParams, ExploreError, UtilityCoeffs};
use crate::gut::GutError;
use crate::matgame::DEFAULT_EPS;

pub mod alien;
pub mod baselines;
pub mod controller;
pub mod greedy;
pub mod gut_policy;
pub mod observe;
pub mod plan;
pub mod predict;

pub use alien::alien_policy;
pub use baselines::{decide_greedy_onelevel, decide_random, BaselineCoeffs, BaselineStrategy};
pub use controller::ExplorerController;
pub use greedy::decide_greedy_qmix;
pub use gut_policy::{decide_gut, DecisionTrees};
pub use observe::{observe_adversary, CombatLog, CommGraph};
pub use plan::{GroupPlan, Posture, TeamPlan};
pub use predict::{predict_linear, predict_poly, Prediction, RegressionCoeffs};

#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("no living explorers")]
    NoExplorers,
    #[error("strategy set is empty")]
    EmptyStrategies,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Gut(#[from] GutError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error("unknown {what} '{value}'")]
    Parse { what: &'static str, value: String },
}

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident, $what:literal, { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($name::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = PolicyError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.trim() {
                    $($text => Ok($name::$variant),)+
                    other => Err(PolicyError::Parse { what: $what, value: other.to_string() }),
                }
            }
        }

        impl TryFrom<String> for $name {
            type Error = PolicyError;
            fn try_from(s: String) -> Result<Self, Self::Error> {
                s.parse()
            }
        }

        impl From<$name> for String {
            fn from(v: $name) -> String {
                v.name().to_string()
            }
        }
    };
}

named_enum!(
    /// Explorer team policy.
    PolicyKind, "policy", {
        GutNC => "gut-nc",
        GreedyQmixPC => "qmix-pc",
        GutPC => "gut-pc",
        GutFC => "gut-fc",
        RandomBaseline => "random",
        GreedyOneLevel => "greedy",
    }
);

named_enum!(
    /// How much of the alien state explorers can see.
    InfoMode, "info mode", {
        Complete => "complete",
        IncompleteLinear => "linear",
        IncompletePoly => "poly",
    }
);

named_enum!(
    AlienMode, "alien mode", {
        Random => "random",
        Greedy => "greedy",
    }
);

/// Who pools observations with whom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoopMode {
    NC,
    PC,
    FC,
}

/// Group movement knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MotionParams {
    /// Slot spacing while travelling.
    pub spacing: f64,
    /// How far ahead of its centroid a travelling group aims.
    pub lookahead: f64,
    /// Centroid distance to the treasure at which a group circles it.
    pub arrive_radius: f64,
    /// Defending groups engage their target when it comes this close.
    pub defend_radius: f64,
    /// Engagement slots stay within this fraction of the attack radius.
    pub engage_reach: f64,
}

impl Default for MotionParams {
    fn default() -> Self {
        Self {
            spacing: 0.25,
            lookahead: 0.3,
            arrive_radius: 0.6,
            defend_radius: 0.5,
            engage_reach: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PolicyParams {
    pub coeffs: UtilityCoeffs,
    pub regression: RegressionCoeffs,
    pub baseline: BaselineCoeffs,
    pub combat: CombatParams,
    pub info: InfoMode,
    pub motion: MotionParams,
    pub replan_interval: u64,
    pub min_replan_gap: u64,
    /// Use the Attack/Defend + reaction trees instead of the three-level one.
    pub two_level: bool,
    pub eps: f64,
}

impl Default for PolicyParams {
    fn default() -> Self {
        Self {
            coeffs: UtilityCoeffs::default(),
            regression: RegressionCoeffs::default(),
            baseline: BaselineCoeffs::default(),
            combat: CombatParams::default(),
            info: InfoMode::Complete,
            motion: MotionParams::default(),
            replan_interval: 10,
            min_replan_gap: 2,
            two_level: false,
            eps: DEFAULT_EPS,
        }
    }
}
