//! Group plans and their translation into per-tick commands.

use std::f64::consts::PI;

use crate::explore::{
    avoid_obstacles, formation_targets, geometry::centroid, ArenaConfig, Command, Formation, FormationKind, Side, Vec2,
    WorldState,
};
use crate::gut::StrategySeries;

use super::MotionParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Posture {
    /// No aliens in view: head for the treasure.
    Patrol,
    /// Go after the target wherever it is.
    Attack,
    /// Head for the treasure, engaging only targets that contest it or
    /// come close.
    Defend,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subgroup {
    pub members: Vec<usize>,
    pub target: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupPlan {
    pub members: Vec<usize>,
    pub posture: Posture,
    pub formation: FormationKind,
    pub subgroups: Vec<Subgroup>,
    /// The descent behind this plan, for tree-based policies.
    pub series: Option<StrategySeries>,
    /// Explorers whose observations went into the decision.
    pub sources: Vec<usize>,
}

impl GroupPlan {
    pub fn patrol(members: Vec<usize>, sources: Vec<usize>) -> Self {
        Self {
            subgroups: vec![Subgroup {
                members: members.clone(),
                target: None,
            }],
            members,
            posture: Posture::Patrol,
            formation: FormationKind::Patrol,
            series: None,
            sources,
        }
    }

    /// Single-subgroup plan.
    pub fn single(members: Vec<usize>, sources: Vec<usize>, posture: Posture, formation: FormationKind, target: Option<usize>) -> Self {
        Self {
            subgroups: vec![Subgroup {
                members: members.clone(),
                target,
            }],
            members,
            posture,
            formation,
            series: None,
            sources,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TeamPlan {
    pub groups: Vec<GroupPlan>,
}

/// Largest spacing (up to `base`) that keeps every slot within `reach` of
/// the anchor.
pub fn fitted_spacing(kind: FormationKind, n: usize, base: f64, reach: f64) -> f64 {
    if n <= 1 {
        return base;
    }
    let s = match kind {
        FormationKind::AttackTriangle => {
            let mut rows = 1usize;
            while rows * (rows + 1) / 2 < n {
                rows += 1;
            }
            reach / (rows - 1) as f64
        }
        FormationKind::DefendPolygon => reach * 2.0 * (PI / n as f64).sin(),
        FormationKind::TreasureCircle => (reach * 2.0 * (PI / n as f64).sin()).min(reach),
        FormationKind::Patrol => 2.0 * reach / (n - 1) as f64,
    };
    s.min(base).max(1e-3)
}

/// Smallest reach a travelling layout is squeezed to.
const MIN_CLEARANCE: f64 = 0.05;

fn push_out(arena: &ArenaConfig, p: Vec2) -> Vec2 {
    let mut p = arena.clamp(p);
    for o in &arena.obstacles {
        let rel = p - o.center;
        let d = rel.norm();
        let min = o.radius + crate::explore::geometry::AVOID_MARGIN;
        if d < min {
            p = o.center + rel.normalized().unwrap_or(Vec2::new(1.0, 0.0)) * min;
        }
    }
    arena.clamp(p)
}

/// Nearest living opponent within attack range, lowest id on ties.
pub fn nearest_in_range(world: &WorldState, id: usize) -> Option<usize> {
    let me = &world.agents[id];
    world
        .living(me.side.opponent())
        .map(|o| (me.position.dist(o.position), o.id))
        .filter(|(d, _)| *d <= me.attack_radius)
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, id)| id)
}

fn fire(world: &WorldState, id: usize, preferred: Option<usize>) -> Option<usize> {
    let me = &world.agents[id];
    if let Some(t) = preferred {
        let o = &world.agents[t];
        if o.alive && o.side != me.side && me.position.dist(o.position) <= me.attack_radius {
            return Some(t);
        }
    }
    nearest_in_range(world, id)
}

/// Commands for every living explorer covered by `plan`.
pub fn plan_commands(world: &WorldState, plan: &TeamPlan, motion: &MotionParams) -> Vec<(usize, Command)> {
    let arena = &world.arena;
    let mut out = Vec::new();
    for g in &plan.groups {
        for sub in &g.subgroups {
            let living: Vec<usize> = sub.members.iter().copied().filter(|&m| world.agents[m].alive).collect();
            let Some(c) = centroid(living.iter().map(|&m| world.agents[m].position)) else {
                continue;
            };
            let reach = living
                .iter()
                .map(|&m| world.agents[m].attack_radius)
                .fold(f64::INFINITY, f64::min)
                * motion.engage_reach;
            let target = sub
                .target
                .filter(|&t| world.agents[t].alive && world.agents[t].side == Side::Alien);
            let engage = target.filter(|&t| {
                let p = world.agents[t].position;
                match g.posture {
                    Posture::Attack => true,
                    Posture::Defend => {
                        p.dist(arena.treasure) <= arena.contested_radius() || p.dist(c) <= motion.defend_radius
                    }
                    Posture::Patrol => false,
                }
            });
            let (kind, anchor, heading, spacing) = if let Some(t) = engage {
                let tp = world.agents[t].position;
                let kind = match g.formation {
                    FormationKind::DefendPolygon => FormationKind::DefendPolygon,
                    _ => FormationKind::AttackTriangle,
                };
                let heading = (tp - c).normalized().unwrap_or(Vec2::new(1.0, 0.0));
                (kind, tp, heading, fitted_spacing(kind, living.len(), motion.spacing, reach))
            } else if c.dist(arena.treasure) <= motion.arrive_radius {
                let kind = FormationKind::TreasureCircle;
                let fit = fitted_spacing(kind, living.len(), motion.spacing, arena.treasure_radius * 0.6);
                (kind, arena.treasure, Vec2::new(1.0, 0.0), fit)
            } else {
                // A group straddling an obstacle routes from its lead member.
                let blocked = arena
                    .obstacles
                    .iter()
                    .any(|o| c.dist(o.center) < o.radius + crate::explore::geometry::AVOID_MARGIN);
                let c = if blocked {
                    living
                        .iter()
                        .map(|&m| world.agents[m].position)
                        .min_by(|a, b| a.dist(arena.treasure).total_cmp(&b.dist(arena.treasure)))
                        .unwrap_or(c)
                } else {
                    c
                };
                let way = avoid_obstacles(c, arena.treasure, &arena.obstacles).unwrap_or(arena.treasure);
                let heading = (way - c).normalized().unwrap_or(Vec2::new(1.0, 0.0));
                let ahead = motion.lookahead.min(c.dist(way));
                let kind = match g.posture {
                    Posture::Patrol => FormationKind::Patrol,
                    _ => g.formation,
                };
                let anchor = c + heading * ahead;
                // Squeeze through gaps: shrink the layout to the local clearance.
                let clear = arena
                    .obstacles
                    .iter()
                    .map(|o| anchor.dist(o.center) - o.radius - crate::explore::geometry::AVOID_MARGIN)
                    .fold(f64::INFINITY, f64::min)
                    .max(MIN_CLEARANCE);
                (kind, anchor, heading, fitted_spacing(kind, living.len(), motion.spacing, clear))
            };
            let f = Formation::new(kind, spacing, heading);
            let Ok(slots) = formation_targets(&f, &living, anchor) else {
                continue;
            };
            for (id, slot) in slots {
                out.push((
                    id,
                    Command {
                        move_to: Some(push_out(arena, slot)),
                        attack: fire(world, id, target),
                    },
                ));
            }
        }
    }
    out.sort_by_key(|(id, _)| *id);
    out
}

/// Splits `members` into `parts` contiguous chunks across `heading`
/// (largest chunks first).
pub fn split_members(world: &WorldState, members: &[usize], parts: usize, heading: Vec2) -> Vec<Vec<usize>> {
    let parts = parts.clamp(1, members.len().max(1));
    let side = heading.normalized().unwrap_or(Vec2::new(1.0, 0.0)).perp();
    let mut sorted = members.to_vec();
    sorted.sort_by(|&a, &b| {
        let (pa, pb) = (world.agents[a].position.dot(side), world.agents[b].position.dot(side));
        pa.total_cmp(&pb).then(a.cmp(&b))
    });
    let base = sorted.len() / parts;
    let extra = sorted.len() % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for i in 0..parts {
        let len = base + usize::from(i < extra);
        let mut chunk = sorted[start..start + len].to_vec();
        chunk.sort_unstable();
        out.push(chunk);
        start += len;
    }
    out
}
