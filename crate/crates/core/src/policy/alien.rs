//! Alien behavior: independent, never coordinated.

use std::f64::consts::TAU;

use rand::{Rng, RngCore};

use crate::explore::{win_probability, AgentState, Command, Side, Vec2, WorldState};

use super::greedy::ATTACK_THRESHOLD;
use super::plan::nearest_in_range;
use super::AlienMode;

fn nearest(from: &AgentState, pool: &[&AgentState]) -> Option<usize> {
    pool.iter()
        .map(|o| (from.position.dist(o.position), o.id))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, id)| id)
}

fn lowest_hp(pool: &[&AgentState]) -> Option<usize> {
    pool.iter()
        .min_by(|a, b| a.hp.total_cmp(&b.hp).then(a.id.cmp(&b.id)))
        .map(|o| o.id)
}

/// One command per living alien, in id order.
///
/// Random: with nobody in view an alien holds or wanders; otherwise it
/// picks uniformly among closing on the nearest explorer, holding, and
/// hitting the nearest explorer in range. Greedy: it always hits the
/// lowest-HP explorer in range, and with a local win chance above the
/// threshold it also closes on the nearest explorer in view.
pub fn alien_policy(world: &WorldState, mode: AlienMode, a: f64, rng: &mut dyn RngCore) -> Vec<(usize, Command)> {
    let explorers: Vec<&AgentState> = world.living(Side::Explorer).collect();
    let aliens: Vec<&AgentState> = world.living(Side::Alien).collect();
    let mut out = Vec::with_capacity(aliens.len());
    for me in &aliens {
        let seen: Vec<&AgentState> = explorers.iter().copied().filter(|e| me.senses(e.position)).collect();
        let cmd = match mode {
            AlienMode::Random => {
                if seen.is_empty() {
                    if rng.random_bool(0.5) {
                        Command::hold()
                    } else {
                        let dir = Vec2::new(1.0, 0.0).rotate(rng.random_range(0.0..TAU));
                        Command::move_to(me.position + dir * world.speed)
                    }
                } else {
                    match rng.random_range(0..3u8) {
                        0 => Command::move_to(world.agents[nearest(me, &seen).expect("non-empty")].position),
                        1 => Command::hold(),
                        _ => Command {
                            move_to: None,
                            attack: nearest_in_range(world, me.id),
                        },
                    }
                }
            }
            AlienMode::Greedy => {
                if seen.is_empty() {
                    Command::hold()
                } else {
                    let friends: Vec<&AgentState> = aliens.iter().copied().filter(|o| me.senses(o.position)).collect();
                    let t_self = friends.iter().map(|o| o.energy).sum::<f64>() / friends.len() as f64;
                    let t_opp = seen.iter().map(|o| o.energy).sum::<f64>() / seen.len() as f64;
                    let w = win_probability(t_self.max(0.0), t_opp.max(1e-6), friends.len(), seen.len(), a).unwrap_or(0.0);
                    let in_range: Vec<&AgentState> = seen
                        .iter()
                        .copied()
                        .filter(|e| me.position.dist(e.position) <= me.attack_radius)
                        .collect();
                    if w > ATTACK_THRESHOLD {
                        let close = nearest(me, &seen).expect("non-empty");
                        Command {
                            move_to: Some(world.agents[close].position),
                            attack: lowest_hp(&in_range),
                        }
                    } else {
                        Command {
                            move_to: None,
                            attack: lowest_hp(&in_range),
                        }
                    }
                }
            }
        };
        out.push((me.id, cmd));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::ArenaConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn world(explorers: &[(f64, f64, f64)], aliens: &[(f64, f64)]) -> WorldState {
        let mut agents = Vec::new();
        for &(x, y, hp) in explorers {
            let mut a = AgentState::new(agents.len(), Side::Explorer, Vec2::new(x, y), 2.0, 0.5);
            a.hp = hp;
            a.energy = 80.0;
            agents.push(a);
        }
        for &(x, y) in aliens {
            agents.push(AgentState::new(agents.len(), Side::Alien, Vec2::new(x, y), 2.0, 0.5));
        }
        WorldState::new(ArenaConfig::default(), agents, 100, 0.05).unwrap()
    }

    #[test]
    fn nobody_in_view() {
        let w = world(&[(1.0, 1.0, 100.0)], &[(8.0, 8.0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let c = alien_policy(&w, AlienMode::Greedy, 0.5, &mut rng);
        assert_eq!(c, vec![(1, Command::hold())]);
        for _ in 0..20 {
            let c = alien_policy(&w, AlienMode::Random, 0.5, &mut rng);
            assert!(c[0].1.attack.is_none());
            if let Some(p) = c[0].1.move_to {
                assert!((p.dist(Vec2::new(8.0, 8.0)) - 0.05).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn greedy_hits_weakest() {
        let w = world(&[(5.0, 5.0, 20.0), (5.2, 5.0, 80.0)], &[(5.1, 5.1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let c = alien_policy(&w, AlienMode::Greedy, 0.5, &mut rng);
        assert_eq!(c[0].1.attack, Some(0));
    }

    #[test]
    fn random_is_reproducible() {
        let w = world(&[(5.0, 5.0, 90.0), (5.3, 5.4, 80.0)], &[(5.1, 5.1), (6.0, 6.0), (3.9, 5.0)]);
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..30).map(|_| alien_policy(&w, AlienMode::Random, 0.5, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(run(4), run(4));
    }
}
