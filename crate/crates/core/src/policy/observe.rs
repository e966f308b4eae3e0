//! Who talks to whom, what a group can see, and what it can infer about the
//! aliens from combat.

use std::collections::BTreeMap;

use crate::explore::{Side, StepEvents, WorldState};

use super::CoopMode;

/// Undirected communication graph over living explorers.
#[derive(Debug, Clone, PartialEq)]
pub struct CommGraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl CommGraph {
    /// NC has no edges, PC links explorers that sense each other, FC is
    /// complete.
    pub fn build(mode: CoopMode, world: &WorldState) -> Self {
        let nodes: Vec<usize> = world.living(Side::Explorer).map(|a| a.id).collect();
        let mut edges = Vec::new();
        if mode != CoopMode::NC {
            for (i, &a) in nodes.iter().enumerate() {
                for &b in &nodes[i + 1..] {
                    let (pa, pb) = (&world.agents[a], &world.agents[b]);
                    let linked = match mode {
                        CoopMode::FC => true,
                        _ => pa.position.dist(pb.position) <= pa.sense_radius.min(pb.sense_radius),
                    };
                    if linked {
                        edges.push((a, b));
                    }
                }
            }
        }
        Self { nodes, edges }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let index: BTreeMap<usize, usize> = self.nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.nodes.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.nodes[i]);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

/// Living aliens sensed by at least one of `members`, sorted by id.
pub fn sensed_aliens(world: &WorldState, members: &[usize]) -> Vec<usize> {
    world
        .living(Side::Alien)
        .filter(|al| members.iter().any(|&m| world.agents[m].senses(al.position)))
        .map(|al| al.id)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEvent {
    pub tick: u64,
    pub attacker: usize,
    pub attacker_side: Side,
    pub target: usize,
    pub damage: f64,
}

/// Running combat statistics for one alien.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AlienTally {
    pub attacks: u64,
    pub damage_dealt: f64,
    pub hp_lost: f64,
}

/// Combat history. Raw events are optional; per-alien tallies always kept.
#[derive(Debug, Clone, Default)]
pub struct CombatLog {
    keep_events: bool,
    events: Vec<LogEvent>,
    tallies: BTreeMap<usize, AlienTally>,
}

impl CombatLog {
    pub fn new(keep_events: bool) -> Self {
        Self {
            keep_events,
            ..Default::default()
        }
    }

    pub fn record(&mut self, ev: &StepEvents, world: &WorldState) {
        for h in &ev.hits {
            let side = world.agents[h.attacker].side;
            if self.keep_events {
                self.events.push(LogEvent {
                    tick: ev.tick,
                    attacker: h.attacker,
                    attacker_side: side,
                    target: h.target,
                    damage: h.damage,
                });
            }
            match side {
                Side::Alien => {
                    let t = self.tallies.entry(h.attacker).or_default();
                    t.attacks += 1;
                    t.damage_dealt += h.damage;
                }
                Side::Explorer => self.tallies.entry(h.target).or_default().hp_lost += h.damage,
            }
        }
    }

    pub fn events(&self) -> &[LogEvent] {
        &self.events
    }

    pub fn tally(&self, alien: usize) -> AlienTally {
        self.tallies.get(&alien).copied().unwrap_or_default()
    }

    /// Whole-history `(HP_uc, HP_asc)` over the given aliens; `priors` fill
    /// in whichever statistic has no observations.
    pub fn observe(&self, aliens: &[usize], priors: (f64, f64)) -> (f64, f64) {
        let (mut attacks, mut dealt) = (0u64, 0.0);
        let (mut lost, mut hurt) = (0.0, 0usize);
        for &a in aliens {
            let t = self.tally(a);
            attacks += t.attacks;
            dealt += t.damage_dealt;
            if t.hp_lost > 0.0 {
                lost += t.hp_lost;
                hurt += 1;
            }
        }
        let uc = if attacks > 0 { dealt / attacks as f64 } else { priors.0 };
        let asc = if hurt > 0 { lost / hurt as f64 } else { priors.1 };
        (uc, asc)
    }
}

/// `(HP_uc, HP_asc)` from events in the last `window` ticks before `now`:
/// the mean damage per alien attack, and the mean cumulative HP lost per
/// alien that was hit. Missing statistics fall back to `priors`.
pub fn observe_adversary(events: &[LogEvent], window: u64, now: u64, priors: (f64, f64)) -> (f64, f64) {
    let start = now.saturating_sub(window);
    let recent = events.iter().filter(|e| e.tick >= start && e.tick <= now);
    let (mut n, mut dealt) = (0usize, 0.0);
    let mut lost: BTreeMap<usize, f64> = BTreeMap::new();
    for e in recent {
        match e.attacker_side {
            Side::Alien => {
                n += 1;
                dealt += e.damage;
            }
            Side::Explorer => *lost.entry(e.target).or_default() += e.damage,
        }
    }
    let uc = if n > 0 { dealt / n as f64 } else { priors.0 };
    let asc = if lost.is_empty() {
        priors.1
    } else {
        lost.values().sum::<f64>() / lost.len() as f64
    };
    (uc, asc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(tick: u64, attacker: usize, side: Side, target: usize, damage: f64) -> LogEvent {
        LogEvent {
            tick,
            attacker,
            attacker_side: side,
            target,
            damage,
        }
    }

    #[test]
    fn observe_examples() {
        assert_eq!(observe_adversary(&[], 10, 100, (0.15, 3.0)), (0.15, 3.0));
        let one = [ev(5, 9, Side::Alien, 0, 0.15)];
        assert_eq!(observe_adversary(&one, 10, 10, (1.0, 3.0)).0, 0.15);
        let mut log = Vec::new();
        for i in 0..200 {
            log.push(ev(i, 0, Side::Explorer, 7, 0.05));
        }
        for i in 0..400 {
            log.push(ev(i, 1, Side::Explorer, 8, 0.05));
        }
        let (_, asc) = observe_adversary(&log, 1000, 500, (0.0, 0.0));
        assert!((asc - 15.0).abs() < 1e-9);
    }

    #[test]
    fn window_excludes_old_events() {
        let log = [ev(1, 9, Side::Alien, 0, 0.5), ev(50, 9, Side::Alien, 0, 0.15)];
        assert_eq!(observe_adversary(&log, 10, 55, (0.0, 0.0)).0, 0.15);
    }
}
