//! Level payoff builders for the explorers-vs-aliens trees.
//!
//! Rows are always explorer (ally) strategies and columns alien
//! strategies; entries are explorer payoffs.

use crate::gut::{CellChoice, GutTree, LevelSpec};
use crate::matgame::PayoffMatrix;

use super::geometry::{centroid, Vec2};
use super::utility::{energy_utility, hp_utility, win_probability, UtilityCoeffs};

/// Floor applied to per-attack energy costs before dividing by them.
pub const MIN_UNIT_COST: f64 = 1e-3;

// Mean energies below this are treated as this when forming energy ratios.
const MIN_MEAN_ENERGY: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct AllyView {
    pub id: usize,
    pub position: Vec2,
    pub energy: f64,
    pub hp: f64,
}

/// An alien as the deciding group believes it to be.
#[derive(Debug, Clone, PartialEq)]
pub struct AlienView {
    pub id: usize,
    pub position: Vec2,
    pub hp: f64,
    /// Energy level, true or predicted.
    pub energy: f64,
    /// Energy spent per attack, true or predicted.
    pub unit_cost: f64,
}

impl AlienView {
    /// Remaining attacks the alien can afford.
    pub fn ability(&self) -> f64 {
        self.energy.max(0.0) / self.unit_cost.max(MIN_UNIT_COST)
    }
}

/// Everything a level builder may look at.
#[derive(Debug, Clone, PartialEq)]
pub struct ExploreContext {
    pub allies: Vec<AllyView>,
    pub aliens: Vec<AlienView>,
    pub coeffs: UtilityCoeffs,
    /// Attack radius of explorers and aliens (agent size).
    pub explorer_phi: f64,
    pub alien_phi: f64,
    /// Energy an explorer spends per attack.
    pub explorer_unit_cost: f64,
}

impl ExploreContext {
    fn check(&self) -> Result<(), String> {
        if self.allies.is_empty() {
            return Err("no explorers in context".into());
        }
        if self.aliens.is_empty() {
            return Err("no aliens in context".into());
        }
        Ok(())
    }

    pub fn ally_centroid(&self) -> Option<Vec2> {
        centroid(self.allies.iter().map(|a| a.position))
    }

    pub fn alien_centroid(&self) -> Option<Vec2> {
        centroid(self.aliens.iter().map(|a| a.position))
    }

    pub fn mean_ally_energy(&self) -> f64 {
        mean(self.allies.iter().map(|a| a.energy))
    }

    pub fn mean_alien_energy(&self) -> f64 {
        mean(self.aliens.iter().map(|a| a.energy))
    }

    /// Indices into `aliens` ordered by `rule` as seen from `from`; ties go
    /// to the lower id.
    pub fn rank_aliens(&self, rule: TargetRule, from: Vec2) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.aliens.len()).collect();
        let key = |i: usize| -> f64 {
            let a = &self.aliens[i];
            match rule {
                TargetRule::Nearest => a.position.dist(from),
                TargetRule::LowestAbility => a.ability(),
                TargetRule::HighestAbility => -a.ability(),
            }
        };
        idx.sort_by(|&i, &j| key(i).total_cmp(&key(j)).then(self.aliens[i].id.cmp(&self.aliens[j].id)));
        idx
    }

    /// The explorer an alien applying `rule` from `from` would go after.
    pub fn pick_ally(&self, rule: TargetRule, from: Vec2) -> Option<usize> {
        let cost = self.explorer_unit_cost.max(MIN_UNIT_COST);
        let key = |i: usize| -> f64 {
            let a = &self.allies[i];
            match rule {
                TargetRule::Nearest => a.position.dist(from),
                TargetRule::LowestAbility => a.energy / cost,
                TargetRule::HighestAbility => -a.energy / cost,
            }
        };
        (0..self.allies.len()).min_by(|&i, &j| key(i).total_cmp(&key(j)).then(self.allies[i].id.cmp(&self.allies[j].id)))
    }
}

fn mean(it: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = it.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}

/// Who to attack or defend against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetRule {
    Nearest,
    LowestAbility,
    HighestAbility,
}

impl TargetRule {
    pub const ALL: [TargetRule; 3] = [TargetRule::Nearest, TargetRule::LowestAbility, TargetRule::HighestAbility];
}

pub const LEVEL1_LABELS: [&str; 2] = ["Attack", "Defend"];
pub const LEVEL2_LABELS: [&str; 3] = ["Nearest", "LowestAbility", "HighestAbility"];
pub const LEVEL3_ROWS: [&str; 3] = ["OneGroup", "TwoGroups", "ThreeGroups"];
pub const LEVEL3_COLS: [&str; 2] = ["Independent", "Dependent"];
pub const SINGLE_ROWS: [&str; 2] = ["DeltaSpeed", "DeltaDirection"];
pub const MULTI_ROWS: [&str; 2] = ["Triangle", "Diamond"];
pub const REACTION_COLS: [&str; 2] = ["Follow", "Retreat"];

fn matrix(rows: &[Vec<f64>]) -> Result<PayoffMatrix, String> {
    PayoffMatrix::from_rows(rows).map_err(|e| e.to_string())
}

/// Attack/Defend against Attack/Defend, from winning chances.
///
/// A side that defends fights from formation, which doubles its effective
/// head count in the exponent; when both defend no fight happens and the
/// exponent is zero.
pub fn build_level1(ctx: &ExploreContext) -> Result<PayoffMatrix, String> {
    ctx.check()?;
    let t_e = ctx.mean_ally_energy().max(0.0);
    let t_a = ctx.mean_alien_energy().max(MIN_MEAN_ENERGY);
    let (n, m, a) = (ctx.allies.len(), ctx.aliens.len(), ctx.coeffs.a);
    let w = |n: usize, m: usize| win_probability(t_e, t_a, n, m, a).map_err(|e| e.to_string());
    matrix(&[vec![w(n, m)?, w(n, 2 * m)?], vec![w(2 * n, m)?, w(n, 0)?]])
}

/// Target rule against target rule, from relative energy cost.
///
/// Entry `(i, j)` is the negated energy cost over the distance between the
/// alien the explorers pick with rule `i` and the explorer the aliens pick
/// with rule `j`.
pub fn build_level2(ctx: &ExploreContext) -> Result<PayoffMatrix, String> {
    ctx.check()?;
    let from_allies = ctx.ally_centroid().ok_or("no explorers")?;
    let from_aliens = ctx.alien_centroid().ok_or("no aliens")?;
    let (n, m) = (ctx.allies.len(), ctx.aliens.len());
    let c = &ctx.coeffs;
    let mut rows = Vec::with_capacity(3);
    for rule in TargetRule::ALL {
        let target = &ctx.aliens[ctx.rank_aliens(rule, from_allies)[0]];
        let row = TargetRule::ALL
            .iter()
            .map(|&alien_rule| {
                let victim = &ctx.allies[ctx.pick_ally(alien_rule, from_aliens).expect("non-empty")];
                -energy_utility(n, m, target.position.dist(victim.position), c.b0, c.b1)
            })
            .collect();
        rows.push(row);
    }
    matrix(&rows)
}

/// Subgroup count against alien independence, from relative HP cost.
///
/// With `s` subgroups the largest holds `ceil(n/s)` explorers. Independent
/// aliens spread evenly over the subgroups; dependent aliens pile onto one.
pub fn build_level3(ctx: &ExploreContext) -> Result<PayoffMatrix, String> {
    ctx.check()?;
    let (n, m) = (ctx.allies.len(), ctx.aliens.len());
    let hp = |k, g| hp_utility(k, g, ctx.explorer_phi, ctx.alien_phi, &ctx.coeffs);
    let rows: Vec<Vec<f64>> = (1..=3usize)
        .map(|s| vec![hp(n.div_ceil(s), m.div_ceil(s)), hp(n.div_ceil(s), m)])
        .collect();
    matrix(&rows)
}

// Share of each side drawn into contact under a reaction-level cell.
const ENGAGE_FULL: f64 = 1.0;
const ENGAGE_PARTIAL: f64 = 0.5;

fn reaction_matrix(ctx: &ExploreContext, row_share: [f64; 2]) -> Result<PayoffMatrix, String> {
    ctx.check()?;
    let (n, m) = (ctx.allies.len() as f64, ctx.aliens.len() as f64);
    let col_share = [ENGAGE_FULL, ENGAGE_PARTIAL];
    let rows: Vec<Vec<f64>> = row_share
        .iter()
        .map(|r| {
            col_share
                .iter()
                .map(|c| {
                    let f = r * c;
                    let k = (f * n).ceil() as usize;
                    let g = (f * m).ceil() as usize;
                    hp_utility(k, g, ctx.explorer_phi, ctx.alien_phi, &ctx.coeffs)
                })
                .collect()
        })
        .collect();
    matrix(&rows)
}

/// Lone explorer: change speed or direction against Follow/Retreat.
pub fn build_level2_single(ctx: &ExploreContext) -> Result<PayoffMatrix, String> {
    // Speeding away keeps only part of the contact; turning in commits fully.
    reaction_matrix(ctx, [ENGAGE_PARTIAL, ENGAGE_FULL])
}

/// Group: Triangle or Diamond shape against Follow/Retreat.
pub fn build_level2_multi(ctx: &ExploreContext) -> Result<PayoffMatrix, String> {
    // The wedge brings every member to bear; the diamond only its near side.
    reaction_matrix(ctx, [ENGAGE_FULL, ENGAGE_PARTIAL])
}

fn level1_spec() -> LevelSpec<ExploreContext> {
    LevelSpec::new("what", &LEVEL1_LABELS, &LEVEL1_LABELS, |c: &ExploreContext, _: &[CellChoice]| build_level1(c))
}

/// Attack/Defend, then who, then how many subgroups.
pub fn three_level_tree() -> GutTree<ExploreContext> {
    GutTree::new(vec![
        level1_spec(),
        LevelSpec::new("who", &LEVEL2_LABELS, &LEVEL2_LABELS, |c: &ExploreContext, _: &[CellChoice]| build_level2(c)),
        LevelSpec::new("how", &LEVEL3_ROWS, &LEVEL3_COLS, |c: &ExploreContext, _: &[CellChoice]| build_level3(c)),
    ])
    .expect("static tree is valid")
}

/// Attack/Defend, then a reaction level for a lone explorer or a group.
pub fn two_level_tree(multi: bool) -> GutTree<ExploreContext> {
    let second = if multi {
        LevelSpec::new("shape", &MULTI_ROWS, &REACTION_COLS, |c: &ExploreContext, _: &[CellChoice]| build_level2_multi(c))
    } else {
        LevelSpec::new("manoeuvre", &SINGLE_ROWS, &REACTION_COLS, |c: &ExploreContext, _: &[CellChoice]| {
            build_level2_single(c)
        })
    };
    GutTree::new(vec![level1_spec(), second]).expect("static tree is valid")
}
