//! One-level baselines over the composite posture x shape strategies.

use rand::RngCore;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::explore::{build_level1, build_level2_multi, build_level2_single, ExploreContext, FormationKind, WorldState};
use crate::matgame::PayoffMatrix;

use super::gut_policy::{build_context, decision_groups};
use super::observe::{sensed_aliens, CombatLog};
use super::plan::{GroupPlan, Posture, TeamPlan};
use super::{CoopMode, PolicyError, PolicyParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BaselineCoeffs {
    pub c1: f64,
    pub c2: f64,
    /// Standard deviation of both reward variables.
    pub sigma: f64,
}

impl Default for BaselineCoeffs {
    fn default() -> Self {
        Self {
            c1: 0.01,
            c2: 0.01,
            sigma: 1.0,
        }
    }
}

/// Means of a strategy's energy- and health-dependent reward variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineStrategy {
    pub energy_rank: f64,
    pub hp_rank: f64,
}

/// Composite strategies: (posture, shape) with their reward means.
/// Attacking and the wedge both cost more energy and risk more HP.
pub const COMPOSITE: [(Posture, FormationKind, BaselineStrategy); 4] = [
    (Posture::Attack, FormationKind::AttackTriangle, BaselineStrategy { energy_rank: 3.0, hp_rank: 3.0 }),
    (Posture::Attack, FormationKind::DefendPolygon, BaselineStrategy { energy_rank: 2.0, hp_rank: 2.0 }),
    (Posture::Defend, FormationKind::AttackTriangle, BaselineStrategy { energy_rank: 1.0, hp_rank: 1.0 }),
    (Posture::Defend, FormationKind::DefendPolygon, BaselineStrategy { energy_rank: 0.0, hp_rank: 0.0 }),
];

fn first_max(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

/// Argmax of `100 - c1*s1*d - c2*s2*n_a*u_hp` with `s1`, `s2` drawn per
/// strategy around its ranks.
pub fn decide_random(
    strats: &[BaselineStrategy],
    d: f64,
    n_a: usize,
    u_hp: f64,
    c: &BaselineCoeffs,
    rng: &mut dyn RngCore,
) -> Result<usize, PolicyError> {
    if strats.is_empty() {
        return Err(PolicyError::EmptyStrategies);
    }
    let mut draw = |mean: f64| {
        if c.sigma > 0.0 {
            Normal::new(mean, c.sigma).map(|n| n.sample(rng)).unwrap_or(mean)
        } else {
            mean
        }
    };
    let rewards: Vec<f64> = strats
        .iter()
        .map(|s| {
            let (s1, s2) = (draw(s.energy_rank), draw(s.hp_rank));
            100.0 - c.c1 * s1 * d - c.c2 * s2 * n_a as f64 * u_hp
        })
        .collect();
    Ok(first_max(rewards).expect("non-empty"))
}

/// Argmax of `w[i] * hp[i]`, lowest index on ties.
pub fn decide_greedy_onelevel(w: &[f64], hp: &[f64]) -> Result<usize, PolicyError> {
    if w.is_empty() || w.len() != hp.len() {
        return Err(PolicyError::EmptyStrategies);
    }
    Ok(first_max(w.iter().zip(hp).map(|(a, b)| a * b)).expect("non-empty"))
}

fn row_mean(m: &PayoffMatrix, r: usize) -> f64 {
    m.row(r).iter().sum::<f64>() / m.cols() as f64
}

/// `(W_i, HP_i)` for each [`COMPOSITE`] strategy: the mean of its posture's
/// row in the Attack/Defend game and of its shape's row in the reaction game.
pub fn composite_utilities(ctx: &ExploreContext) -> Result<(Vec<f64>, Vec<f64>), PolicyError> {
    let l1 = build_level1(ctx).map_err(PolicyError::Domain)?;
    let l2 = if ctx.allies.len() > 1 {
        build_level2_multi(ctx)
    } else {
        build_level2_single(ctx)
    }
    .map_err(PolicyError::Domain)?;
    let mut w = Vec::with_capacity(4);
    let mut hp = Vec::with_capacity(4);
    for (posture, shape, _) in COMPOSITE {
        w.push(row_mean(&l1, usize::from(posture == Posture::Defend)));
        hp.push(row_mean(&l2, usize::from(shape == FormationKind::DefendPolygon)));
    }
    Ok((w, hp))
}

/// Whole-team decision with one of the one-level baselines.
pub fn decide_baseline(
    random: bool,
    world: &WorldState,
    params: &PolicyParams,
    log: &CombatLog,
    rng: &mut dyn RngCore,
) -> Result<TeamPlan, PolicyError> {
    let groups = decision_groups(CoopMode::FC, world);
    if groups.is_empty() {
        return Err(PolicyError::NoExplorers);
    }
    let mut plan = TeamPlan::default();
    for members in groups {
        let sources = members.clone();
        let aliens = sensed_aliens(world, &members);
        if aliens.is_empty() {
            plan.groups.push(GroupPlan::patrol(members, sources));
            continue;
        }
        let ctx = build_context(world, &members, &aliens, params, log, rng);
        let from = ctx.ally_centroid().unwrap_or_default();
        let pick = if random {
            let strats: Vec<BaselineStrategy> = COMPOSITE.iter().map(|c| c.2).collect();
            let d = from.dist(world.arena.treasure);
            decide_random(&strats, d, aliens.len(), params.combat.explorer_attacked_hp, &params.baseline, rng)?
        } else {
            let (w, hp) = composite_utilities(&ctx)?;
            decide_greedy_onelevel(&w, &hp)?
        };
        let (posture, formation, _) = COMPOSITE[pick];
        let target = ctx
            .rank_aliens(crate::explore::TargetRule::Nearest, from)
            .first()
            .map(|&i| ctx.aliens[i].id);
        plan.groups.push(GroupPlan::single(members, sources, posture, formation, target));
    }
    Ok(plan)
}
