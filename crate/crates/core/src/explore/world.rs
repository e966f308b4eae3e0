//! Arena state, the per-tick update and the termination rule.

use std::fmt::{self, Write as _};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{avoid_obstacles, Circle, Vec2};
use super::ExploreError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ArenaConfig {
    pub width: f64,
    pub height: f64,
    pub treasure: Vec2,
    pub treasure_radius: f64,
    pub obstacles: Vec<Circle>,
    /// How far beyond the treasure radius a living alien still contests it.
    pub engagement_range: f64,
}

impl Default for ArenaConfig {
    fn default() -> Self {
        Self {
            width: 10.0,
            height: 10.0,
            treasure: Vec2::new(8.5, 8.5),
            treasure_radius: 0.5,
            obstacles: Vec::new(),
            engagement_range: 1.5,
        }
    }
}

impl ArenaConfig {
    pub fn validate(&self) -> Result<(), ExploreError> {
        let bad = |m: String| Err(ExploreError::InvalidArena(m));
        if !(self.width > 0.0 && self.height > 0.0) || !self.width.is_finite() || !self.height.is_finite() {
            return bad(format!("arena must have positive size, got {}x{}", self.width, self.height));
        }
        if !self.in_bounds(self.treasure) {
            return bad("treasure lies outside the arena".into());
        }
        if !(self.treasure_radius > 0.0) || !(self.engagement_range >= 0.0) {
            return bad("treasure radius must be positive and engagement range non-negative".into());
        }
        for o in &self.obstacles {
            if !(o.radius > 0.0) || !o.center.is_finite() {
                return bad(format!("bad obstacle {o:?}"));
            }
            if o.center.dist(self.treasure) < o.radius + self.treasure_radius {
                return bad("an obstacle covers the treasure".into());
            }
        }
        Ok(())
    }

    pub fn in_bounds(&self, p: Vec2) -> bool {
        p.x >= 0.0 && p.y >= 0.0 && p.x <= self.width && p.y <= self.height
    }

    pub fn clamp(&self, p: Vec2) -> Vec2 {
        Vec2::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.height))
    }

    pub fn blocked(&self, p: Vec2) -> bool {
        self.obstacles.iter().any(|o| o.contains(p))
    }

    /// Radius around the treasure that must be free of living aliens.
    pub fn contested_radius(&self) -> f64 {
        self.treasure_radius + self.engagement_range
    }
}

/// Per-event costs in percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CombatParams {
    pub explorer_step_energy: f64,
    pub explorer_comm_energy: f64,
    pub explorer_attack_energy: f64,
    pub explorer_attacked_hp: f64,
    pub alien_attack_energy: f64,
    pub alien_attacked_hp: f64,
    pub alien_step_energy: f64,
}

impl Default for CombatParams {
    fn default() -> Self {
        Self {
            explorer_step_energy: 0.015,
            explorer_comm_energy: 0.006,
            explorer_attack_energy: 0.01,
            explorer_attacked_hp: 0.15,
            alien_attack_energy: 0.03,
            alien_attacked_hp: 0.05,
            alien_step_energy: 0.005,
        }
    }
}

impl CombatParams {
    pub fn validate(&self) -> Result<(), ExploreError> {
        let all = [
            self.explorer_step_energy,
            self.explorer_comm_energy,
            self.explorer_attack_energy,
            self.explorer_attacked_hp,
            self.alien_attack_energy,
            self.alien_attacked_hp,
            self.alien_step_energy,
        ];
        if all.iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(ExploreError::Domain("combat costs must be positive".into()))
        }
    }

    fn step_energy(&self, side: Side) -> f64 {
        match side {
            Side::Explorer => self.explorer_step_energy,
            Side::Alien => self.alien_step_energy,
        }
    }

    fn attack_energy(&self, side: Side) -> f64 {
        match side {
            Side::Explorer => self.explorer_attack_energy,
            Side::Alien => self.alien_attack_energy,
        }
    }

    /// HP lost by an agent of `side` when hit.
    fn hit_damage(&self, side: Side) -> f64 {
        match side {
            Side::Explorer => self.explorer_attacked_hp,
            Side::Alien => self.alien_attacked_hp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Explorer,
    Alien,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Explorer => Side::Alien,
            Side::Alien => Side::Explorer,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Explorer => "explorer",
            Side::Alien => "alien",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub id: usize,
    pub side: Side,
    pub position: Vec2,
    pub energy: f64,
    pub hp: f64,
    pub alive: bool,
    pub sense_radius: f64,
    pub attack_radius: f64,
}

impl AgentState {
    pub fn new(id: usize, side: Side, position: Vec2, sense_radius: f64, attack_radius: f64) -> Self {
        Self {
            id,
            side,
            position,
            energy: 100.0,
            hp: 100.0,
            alive: true,
            sense_radius,
            attack_radius,
        }
    }

    pub fn senses(&self, p: Vec2) -> bool {
        self.position.dist(p) <= self.sense_radius
    }
}

/// One tick's intent for one agent. Movement and attack are independent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Command {
    pub move_to: Option<Vec2>,
    pub attack: Option<usize>,
}

impl Command {
    pub fn hold() -> Self {
        Self::default()
    }

    pub fn move_to(p: Vec2) -> Self {
        Self {
            move_to: Some(p),
            attack: None,
        }
    }

    pub fn attack(target: usize) -> Self {
        Self {
            move_to: None,
            attack: Some(target),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    pub attacker: usize,
    pub target: usize,
    pub damage: f64,
}

/// What happened during one tick.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StepEvents {
    pub tick: u64,
    pub hits: Vec<Hit>,
    pub deaths: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ongoing,
    ExplorersWin,
    AliensWin,
    Draw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub arena: ArenaConfig,
    /// Indexed by agent id.
    pub agents: Vec<AgentState>,
    pub tick: u64,
    pub tick_limit: u64,
    /// Distance covered by one movement step.
    pub speed: f64,
}

/// Axis-aligned spawn box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub min: Vec2,
    pub max: Vec2,
}

impl Region {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self {
            min: Vec2::new(x0, y0),
            max: Vec2::new(x1, y1),
        }
    }

    fn sample(&self, rng: &mut impl Rng) -> Vec2 {
        Vec2::new(
            rng.random_range(self.min.x..=self.max.x),
            rng.random_range(self.min.y..=self.max.y),
        )
    }
}

impl WorldState {
    pub fn new(arena: ArenaConfig, agents: Vec<AgentState>, tick_limit: u64, speed: f64) -> Result<Self, ExploreError> {
        arena.validate()?;
        for (i, a) in agents.iter().enumerate() {
            if a.id != i {
                return Err(ExploreError::Domain(format!("agent at index {i} has id {}", a.id)));
            }
            if !arena.in_bounds(a.position) {
                return Err(ExploreError::Domain(format!("agent {i} starts out of bounds")));
            }
        }
        Ok(Self {
            arena,
            agents,
            tick: 0,
            tick_limit,
            speed,
        })
    }

    /// Places explorers (ids `0..explorers`) and aliens (the following ids)
    /// uniformly in their regions, outside obstacles.
    #[allow(clippy::too_many_arguments)]
    pub fn spawn(
        arena: ArenaConfig,
        explorers: usize,
        aliens: usize,
        explorer_region: Region,
        alien_region: Region,
        sense_radius: f64,
        attack_radius: f64,
        rng: &mut impl Rng,
    ) -> Result<Self, ExploreError> {
        arena.validate()?;
        let mut agents = Vec::with_capacity(explorers + aliens);
        for (side, count, region) in [
            (Side::Explorer, explorers, explorer_region),
            (Side::Alien, aliens, alien_region),
        ] {
            for _ in 0..count {
                let mut p = region.sample(rng);
                let mut tries = 0;
                while arena.blocked(p) || !arena.in_bounds(p) {
                    tries += 1;
                    if tries > 10_000 {
                        return Err(ExploreError::InvalidArena("spawn region is fully blocked".into()));
                    }
                    p = region.sample(rng);
                }
                agents.push(AgentState::new(agents.len(), side, p, sense_radius, attack_radius));
            }
        }
        Self::new(arena, agents, u64::MAX, 0.05)
    }

    pub fn agent(&self, id: usize) -> Result<&AgentState, ExploreError> {
        self.agents.get(id).ok_or(ExploreError::UnknownAgent(id))
    }

    pub fn living(&self, side: Side) -> impl Iterator<Item = &AgentState> + '_ {
        self.agents.iter().filter(move |a| a.alive && a.side == side)
    }

    pub fn living_count(&self, side: Side) -> usize {
        self.living(side).count()
    }
}

/// Advances the world one tick.
///
/// All moves resolve first, then all attacks against the post-move
/// positions, then deaths. Agents that are dead at the start of the tick
/// ignore their commands and cannot be hit. Attacks on out-of-range,
/// dead or same-side targets do nothing.
pub fn step(world: &mut WorldState, commands: &[(usize, Command)], params: &CombatParams) -> Result<StepEvents, ExploreError> {
    let n = world.agents.len();
    for &(id, c) in commands {
        if id >= n {
            return Err(ExploreError::UnknownAgent(id));
        }
        if let Some(t) = c.attack {
            if t >= n {
                return Err(ExploreError::UnknownAgent(t));
            }
        }
    }
    let alive_at_start: Vec<bool> = world.agents.iter().map(|a| a.alive).collect();

    for &(id, c) in commands {
        let Some(goal) = c.move_to else { continue };
        if !alive_at_start[id] {
            continue;
        }
        let agent = &world.agents[id];
        let goal = world.arena.clamp(goal);
        let Ok(waypoint) = avoid_obstacles(agent.position, goal, &world.arena.obstacles) else {
            continue;
        };
        let next = world.arena.clamp(agent.position.step_toward(waypoint, world.speed));
        if next.dist(agent.position) <= 1e-12 || world.arena.blocked(next) {
            continue;
        }
        let cost = params.step_energy(agent.side);
        let agent = &mut world.agents[id];
        agent.position = next;
        agent.energy -= cost;
    }

    let mut events = StepEvents {
        tick: world.tick,
        ..Default::default()
    };
    for &(id, c) in commands {
        let Some(t) = c.attack else { continue };
        if !alive_at_start[id] || !alive_at_start[t] {
            continue;
        }
        let (a, b) = (&world.agents[id], &world.agents[t]);
        if a.side == b.side || a.position.dist(b.position) > a.attack_radius {
            continue;
        }
        let (cost, damage) = (params.attack_energy(a.side), params.hit_damage(b.side));
        world.agents[id].energy -= cost;
        world.agents[t].hp -= damage;
        events.hits.push(Hit {
            attacker: id,
            target: t,
            damage,
        });
    }

    for a in world.agents.iter_mut() {
        if a.alive && (a.hp <= 0.0 || a.energy <= 0.0) {
            a.alive = false;
            a.hp = a.hp.max(0.0);
            a.energy = a.energy.max(0.0);
            events.deaths.push(a.id);
        }
    }
    world.tick += 1;
    Ok(events)
}

pub fn outcome(world: &WorldState) -> Outcome {
    if world.living_count(Side::Explorer) == 0 {
        return Outcome::AliensWin;
    }
    let t = world.arena.treasure;
    let holding = world
        .living(Side::Explorer)
        .any(|e| e.position.dist(t) <= world.arena.treasure_radius);
    let contested = world
        .living(Side::Alien)
        .any(|a| a.position.dist(t) <= world.arena.contested_radius());
    if holding && !contested {
        Outcome::ExplorersWin
    } else if world.tick >= world.tick_limit {
        Outcome::Draw
    } else {
        Outcome::Ongoing
    }
}

/// One line per agent: `id,side,x,y,energy,hp,alive`.
pub fn snapshot(world: &WorldState) -> String {
    let mut out = String::new();
    for a in &world.agents {
        let _ = writeln!(
            out,
            "{},{},{:.6},{:.6},{:.6},{:.6},{}",
            a.id, a.side, a.position.x, a.position.y, a.energy, a.hp, a.alive as u8
        );
    }
    out
}

/// Snapshot row as parsed back from [`snapshot`] text.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub id: usize,
    pub side: Side,
    pub position: Vec2,
    pub energy: f64,
    pub hp: f64,
    pub alive: bool,
}

pub fn parse_snapshot(text: &str) -> Result<Vec<SnapshotRow>, ExploreError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: &str| ExploreError::Snapshot {
            line: i + 1,
            msg: msg.to_string(),
        };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(err("expected 7 fields"));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| err("bad number"));
        rows.push(SnapshotRow {
            id: f[0].trim().parse().map_err(|_| err("bad id"))?,
            side: match f[1].trim() {
                "explorer" => Side::Explorer,
                "alien" => Side::Alien,
                _ => return Err(err("bad side")),
            },
            position: Vec2::new(num(f[2])?, num(f[3])?),
            energy: num(f[4])?,
            hp: num(f[5])?,
            alive: match f[6].trim() {
                "1" => true,
                "0" => false,
                _ => return Err(err("bad alive flag")),
            },
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn duel(gap: f64) -> WorldState {
        let agents = vec![
            AgentState::new(0, Side::Explorer, Vec2::new(2.0, 2.0), 2.0, 0.5),
            AgentState::new(1, Side::Alien, Vec2::new(2.0 + gap, 2.0), 2.0, 0.5),
        ];
        WorldState::new(ArenaConfig::default(), agents, 100, 0.05).unwrap()
    }

    #[test]
    fn identity_tick() {
        let mut w = duel(3.0);
        let before = w.agents.clone();
        let ev = step(&mut w, &[], &CombatParams::default()).unwrap();
        assert_eq!(w.agents, before);
        assert!(ev.hits.is_empty() && ev.deaths.is_empty());
        assert_eq!(w.tick, 1);
    }

    #[test]
    fn explorer_hit_costs() {
        let mut w = duel(0.3);
        let p = CombatParams::default();
        step(&mut w, &[(0, Command::attack(1))], &p).unwrap();
        assert_eq!(w.agents[0].energy, 100.0 - 0.01);
        assert_eq!(w.agents[1].hp, 100.0 - 0.05);
        assert_eq!(w.agents[0].hp, 100.0);
        assert_eq!(w.agents[1].energy, 100.0);
    }

    #[test]
    fn alien_hit_costs() {
        let mut w = duel(0.3);
        let p = CombatParams::default();
        step(&mut w, &[(1, Command::attack(0))], &p).unwrap();
        assert_eq!(w.agents[1].energy, 100.0 - 0.03);
        assert_eq!(w.agents[0].hp, 100.0 - 0.15);
    }

    #[test]
    fn out_of_range_and_friendly_attacks_do_nothing() {
        let mut w = duel(1.0);
        let before = w.agents.clone();
        step(&mut w, &[(0, Command::attack(1)), (0, Command::attack(0))], &CombatParams::default()).unwrap();
        assert_eq!(w.agents, before);
    }

    #[test]
    fn movement_costs_step_energy() {
        let mut w = duel(3.0);
        let p = CombatParams::default();
        step(&mut w, &[(0, Command::move_to(Vec2::new(0.0, 2.0))), (1, Command::move_to(Vec2::new(9.0, 2.0)))], &p).unwrap();
        assert!((w.agents[0].position.x - 1.95).abs() < 1e-12);
        assert_eq!(w.agents[0].energy, 100.0 - 0.015);
        assert_eq!(w.agents[1].energy, 100.0 - 0.005);
        // Already at the goal: no step, no cost.
        let mut w = duel(3.0);
        step(&mut w, &[(0, Command::move_to(Vec2::new(2.0, 2.0)))], &p).unwrap();
        assert_eq!(w.agents[0].energy, 100.0);
    }

    #[test]
    fn unknown_agents_rejected() {
        let mut w = duel(1.0);
        assert!(matches!(step(&mut w, &[(9, Command::hold())], &CombatParams::default()), Err(ExploreError::UnknownAgent(9))));
        assert!(matches!(step(&mut w, &[(0, Command::attack(5))], &CombatParams::default()), Err(ExploreError::UnknownAgent(5))));
    }

    #[test]
    fn dead_agents_are_inert() {
        let mut w = duel(0.3);
        w.agents[1].hp = 0.04;
        let p = CombatParams::default();
        let ev = step(&mut w, &[(0, Command::attack(1))], &p).unwrap();
        assert_eq!(ev.deaths, vec![1]);
        assert!(!w.agents[1].alive);
        let snap = w.agents.clone();
        let ev = step(&mut w, &[(0, Command::attack(1)), (1, Command::attack(0)), (1, Command::move_to(Vec2::ZERO))], &p).unwrap();
        assert!(ev.hits.is_empty());
        assert_eq!(w.agents, snap);
    }

    #[test]
    fn outcomes() {
        let mut w = duel(3.0);
        assert_eq!(outcome(&w), Outcome::Ongoing);
        w.agents[0].alive = false;
        assert_eq!(outcome(&w), Outcome::AliensWin);

        let mut w = duel(3.0);
        w.agents[1].alive = false;
        w.agents[0].position = w.arena.treasure;
        assert_eq!(outcome(&w), Outcome::ExplorersWin);

        let mut w = duel(3.0);
        w.agents[0].position = w.arena.treasure;
        w.agents[1].position = w.arena.treasure + Vec2::new(-1.0, 0.0);
        assert_eq!(outcome(&w), Outcome::Ongoing);

        let mut w = duel(3.0);
        w.tick = w.tick_limit;
        assert_eq!(outcome(&w), Outcome::Draw);
    }

    #[test]
    fn snapshot_round_trip() {
        let mut w = duel(0.3);
        w.agents[1].alive = false;
        let text = snapshot(&w);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("0,explorer,2.000000,2.000000,100.000000,100.000000,1\n"));
        let rows = parse_snapshot(&text).unwrap();
        assert_eq!(rows[1].side, Side::Alien);
        assert!(!rows[1].alive);
        assert!(parse_snapshot("1,alien,0,0").is_err());
    }

    #[test]
    fn arena_validation() {
        let mut a = ArenaConfig::default();
        a.obstacles.push(Circle::new(8.5, 8.0, 1.0));
        assert!(a.validate().is_err());
        let a = ArenaConfig {
            treasure: Vec2::new(11.0, 1.0),
            ..Default::default()
        };
        assert!(a.validate().is_err());
    }
}
