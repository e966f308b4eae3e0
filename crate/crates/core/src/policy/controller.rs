//! Decision epochs: when the explorer team re-plans, and what it costs.

use std::collections::BTreeSet;

use rand::RngCore;

use crate::explore::{Command, Side, StepEvents, WorldState};

use super::baselines::decide_baseline;
use super::greedy::decide_greedy_qmix;
use super::gut_policy::{decide_gut, DecisionTrees};
use super::observe::{sensed_aliens, CombatLog};
use super::plan::{plan_commands, TeamPlan};
use super::{CoopMode, PolicyError, PolicyKind, PolicyParams};

/// Drives one explorer policy through a trial. Re-plans every
/// `replan_interval` ticks, or sooner (but no more often than
/// `min_replan_gap`) after a death or a newly sighted alien.
#[derive(Debug)]
pub struct ExplorerController {
    kind: PolicyKind,
    params: PolicyParams,
    trees: DecisionTrees,
    plan: TeamPlan,
    log: CombatLog,
    last_plan: Option<u64>,
    seen: BTreeSet<usize>,
    event_pending: bool,
    decisions: u64,
}

impl ExplorerController {
    pub fn new(kind: PolicyKind, params: PolicyParams) -> Self {
        let trees = if params.two_level {
            DecisionTrees::two_level()
        } else {
            DecisionTrees::three_level()
        };
        Self {
            kind,
            params,
            trees,
            plan: TeamPlan::default(),
            log: CombatLog::new(false),
            last_plan: None,
            seen: BTreeSet::new(),
            event_pending: false,
            decisions: 0,
        }
    }

    pub fn plan(&self) -> &TeamPlan {
        &self.plan
    }

    pub fn log(&self) -> &CombatLog {
        &self.log
    }

    /// Number of decision epochs so far.
    pub fn decisions(&self) -> u64 {
        self.decisions
    }

    /// Feeds one tick's combat events back in.
    pub fn observe(&mut self, events: &StepEvents, world: &WorldState) {
        self.log.record(events, world);
        if !events.deaths.is_empty() {
            self.event_pending = true;
        }
    }

    fn due(&mut self, world: &WorldState) -> bool {
        let all: Vec<usize> = world.living(Side::Explorer).map(|a| a.id).collect();
        let sensed: BTreeSet<usize> = sensed_aliens(world, &all).into_iter().collect();
        let sighting = sensed.difference(&self.seen).next().is_some();
        self.seen = sensed;
        if sighting {
            self.event_pending = true;
        }
        match self.last_plan {
            None => true,
            Some(t) => {
                let since = world.tick.saturating_sub(t);
                since >= self.params.replan_interval || (self.event_pending && since >= self.params.min_replan_gap)
            }
        }
    }

    fn decide(&self, world: &WorldState, rng: &mut dyn RngCore) -> Result<TeamPlan, PolicyError> {
        let p = &self.params;
        match self.kind {
            PolicyKind::GutNC => decide_gut(CoopMode::NC, world, &self.trees, p, &self.log, rng),
            PolicyKind::GutPC => decide_gut(CoopMode::PC, world, &self.trees, p, &self.log, rng),
            PolicyKind::GutFC => decide_gut(CoopMode::FC, world, &self.trees, p, &self.log, rng),
            PolicyKind::GreedyQmixPC => decide_greedy_qmix(world, p, &self.log, rng),
            PolicyKind::RandomBaseline => decide_baseline(true, world, p, &self.log, rng),
            PolicyKind::GreedyOneLevel => decide_baseline(false, world, p, &self.log, rng),
        }
    }

    /// Commands for this tick, re-planning first if an epoch is due. Pooled
    /// decisions charge every member of the pool one communication round.
    pub fn commands(&mut self, world: &mut WorldState, rng: &mut dyn RngCore) -> Result<Vec<(usize, Command)>, PolicyError> {
        if world.living_count(Side::Explorer) == 0 {
            return Ok(Vec::new());
        }
        if self.due(world) {
            self.plan = self.decide(world, rng)?;
            self.last_plan = Some(world.tick);
            self.event_pending = false;
            self.decisions += 1;
            let cost = self.params.combat.explorer_comm_energy;
            for g in &self.plan.groups {
                if g.members.len() > 1 {
                    for &m in &g.members {
                        let a = &mut world.agents[m];
                        a.energy -= cost;
                        if a.energy <= 0.0 {
                            a.energy = 0.0;
                            a.alive = false;
                        }
                    }
                }
            }
        }
        Ok(plan_commands(world, &self.plan, &self.params.motion))
    }
}
