//! Tree-based team decisions under the three cooperation modes.

use rand::RngCore;

use crate::explore::{geometry::centroid, AlienView, AllyView, ExploreContext, FormationKind, TargetRule, WorldState};
use crate::explore::{three_level_tree, two_level_tree};
use crate::gut::{descend, GutTree, StrategySeries};

use super::observe::{sensed_aliens, CombatLog, CommGraph};
use super::plan::{split_members, GroupPlan, Posture, Subgroup, TeamPlan};
use super::predict::{predict_linear, predict_poly};
use super::{CoopMode, InfoMode, PolicyError, PolicyParams};

/// Trees used for groups of several explorers and for lone explorers.
pub struct DecisionTrees {
    pub group: GutTree<ExploreContext>,
    pub solo: GutTree<ExploreContext>,
}

impl DecisionTrees {
    pub fn three_level() -> Self {
        Self {
            group: three_level_tree(),
            solo: three_level_tree(),
        }
    }

    pub fn two_level() -> Self {
        Self {
            group: two_level_tree(true),
            solo: two_level_tree(false),
        }
    }

    pub fn for_size(&self, n: usize) -> &GutTree<ExploreContext> {
        if n > 1 {
            &self.group
        } else {
            &self.solo
        }
    }
}

impl std::fmt::Debug for DecisionTrees {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DecisionTrees")
            .field("group_depth", &self.group.depth())
            .field("solo_depth", &self.solo.depth())
            .finish()
    }
}

/// Decision groups for a cooperation mode: singletons, sensing components
/// or the whole team.
pub fn decision_groups(mode: CoopMode, world: &WorldState) -> Vec<Vec<usize>> {
    CommGraph::build(mode, world).components()
}

/// What `members` jointly believe about `aliens`.
pub fn build_context(
    world: &WorldState,
    members: &[usize],
    aliens: &[usize],
    params: &PolicyParams,
    log: &CombatLog,
    rng: &mut dyn RngCore,
) -> ExploreContext {
    let allies = members
        .iter()
        .map(|&m| {
            let a = &world.agents[m];
            AllyView {
                id: a.id,
                position: a.position,
                energy: a.energy,
                hp: a.hp,
            }
        })
        .collect();
    let phi = |ids: &[usize]| ids.iter().map(|&i| world.agents[i].attack_radius).sum::<f64>() / ids.len().max(1) as f64;
    let (explorer_phi, alien_phi) = (phi(members), phi(aliens));
    let priors = (params.combat.explorer_attacked_hp, 0.0);
    let aliens = aliens
        .iter()
        .map(|&id| {
            let a = &world.agents[id];
            let (energy, unit_cost) = match params.info {
                InfoMode::Complete => (a.energy, params.combat.alien_attack_energy),
                InfoMode::IncompleteLinear | InfoMode::IncompletePoly => {
                    let (uc, asc) = log.observe(&[id], priors);
                    let p = if params.info == InfoMode::IncompleteLinear {
                        predict_linear(uc, asc, &params.regression, rng)
                    } else {
                        predict_poly(uc, asc, &params.regression, rng)
                    };
                    (p.e_el, p.e_uc)
                }
            };
            AlienView {
                id,
                position: a.position,
                hp: a.hp,
                energy,
                unit_cost,
            }
        })
        .collect();
    ExploreContext {
        allies,
        aliens,
        coeffs: params.coeffs,
        explorer_phi,
        alien_phi,
        explorer_unit_cost: params.combat.explorer_attack_energy,
    }
}

/// Turns a descent into a group plan by reading the chosen labels.
pub fn plan_from_series(
    world: &WorldState,
    members: Vec<usize>,
    sources: Vec<usize>,
    ctx: &ExploreContext,
    series: StrategySeries,
) -> GroupPlan {
    let mut posture = Posture::Defend;
    let mut formation = FormationKind::DefendPolygon;
    let mut rule = TargetRule::Nearest;
    let mut parts = 1usize;
    for level in &series.levels {
        match level.row_label.as_str() {
            "Attack" => {
                posture = Posture::Attack;
                formation = FormationKind::AttackTriangle;
            }
            "Defend" => {
                posture = Posture::Defend;
                formation = FormationKind::DefendPolygon;
            }
            "Nearest" => rule = TargetRule::Nearest,
            "LowestAbility" => rule = TargetRule::LowestAbility,
            "HighestAbility" => rule = TargetRule::HighestAbility,
            "OneGroup" => parts = 1,
            "TwoGroups" => parts = 2,
            "ThreeGroups" => parts = 3,
            "Triangle" => formation = FormationKind::AttackTriangle,
            "Diamond" => formation = FormationKind::DefendPolygon,
            // Lone-explorer manoeuvres do not change the group layout.
            _ => {}
        }
    }
    let from = centroid(ctx.allies.iter().map(|a| a.position)).unwrap_or_default();
    let ranked: Vec<usize> = ctx.rank_aliens(rule, from).into_iter().map(|i| ctx.aliens[i].id).collect();
    let heading = ranked
        .first()
        .map(|&t| world.agents[t].position - from)
        .unwrap_or_default();
    let subgroups = split_members(world, &members, parts, heading)
        .into_iter()
        .enumerate()
        .map(|(i, m)| Subgroup {
            members: m,
            target: (!ranked.is_empty()).then(|| ranked[i % ranked.len()]),
        })
        .collect();
    GroupPlan {
        members,
        posture,
        formation,
        subgroups,
        series: Some(series),
        sources,
    }
}

/// One group's decision: patrol when nothing is in view, else descend.
pub fn decide_group(
    world: &WorldState,
    members: Vec<usize>,
    trees: &DecisionTrees,
    params: &PolicyParams,
    log: &CombatLog,
    rng: &mut dyn RngCore,
) -> Result<GroupPlan, PolicyError> {
    let sources = members.clone();
    let aliens = sensed_aliens(world, &members);
    if aliens.is_empty() {
        return Ok(GroupPlan::patrol(members, sources));
    }
    let ctx = build_context(world, &members, &aliens, params, log, rng);
    let series = descend(trees.for_size(members.len()), &ctx, params.eps)?;
    Ok(plan_from_series(world, members, sources, &ctx, series))
}

/// NC: every explorer decides alone on its own view. PC: each sensing
/// component pools its view and decides once. FC: one decision for all.
pub fn decide_gut(
    mode: CoopMode,
    world: &WorldState,
    trees: &DecisionTrees,
    params: &PolicyParams,
    log: &CombatLog,
    rng: &mut dyn RngCore,
) -> Result<TeamPlan, PolicyError> {
    let groups = decision_groups(mode, world);
    if groups.is_empty() {
        return Err(PolicyError::NoExplorers);
    }
    let mut plan = TeamPlan::default();
    for members in groups {
        plan.groups.push(decide_group(world, members, trees, params, log, rng)?);
    }
    Ok(plan)
}
