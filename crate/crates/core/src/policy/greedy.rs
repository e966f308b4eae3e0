//! Greedy win-rate rule per sensing component.

use rand::RngCore;

use crate::explore::{win_probability, FormationKind, WorldState};

use super::gut_policy::{build_context, decision_groups};
use super::observe::{sensed_aliens, CombatLog};
use super::plan::{GroupPlan, Posture, TeamPlan};
use super::{CoopMode, PolicyError, PolicyParams};

/// Attack when the estimated win chance beats this, else defend.
pub const ATTACK_THRESHOLD: f64 = 0.5;

/// Per sensing component: attack the lowest-HP alien in view when the
/// winning chance from observed counts and mean energies exceeds
/// [`ATTACK_THRESHOLD`], otherwise defend against it.
pub fn decide_greedy_qmix(
    world: &WorldState,
    params: &PolicyParams,
    log: &CombatLog,
    rng: &mut dyn RngCore,
) -> Result<TeamPlan, PolicyError> {
    let groups = decision_groups(CoopMode::PC, world);
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
        let t_a = ctx.mean_alien_energy().max(1e-6);
        let w = win_probability(ctx.mean_ally_energy().max(0.0), t_a, members.len(), aliens.len(), params.coeffs.a)?;
        let target = ctx
            .aliens
            .iter()
            .min_by(|a, b| a.hp.total_cmp(&b.hp).then(a.id.cmp(&b.id)))
            .map(|a| a.id);
        let (posture, formation) = if w > ATTACK_THRESHOLD {
            (Posture::Attack, FormationKind::AttackTriangle)
        } else {
            (Posture::Defend, FormationKind::DefendPolygon)
        };
        plan.groups.push(GroupPlan::single(members, sources, posture, formation, target));
    }
    Ok(plan)
}
