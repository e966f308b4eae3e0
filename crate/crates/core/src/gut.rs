//! Game-theoretic utility trees.
//!
//! A tree holds `w` levels. Each level is a zero-sum game between the ally
//! team (rows) and the adversary (columns) whose payoffs are produced by a
//! builder from the decision context and the cells chosen at the levels above.
//! Descending the tree solves one game per level, selects a cell from its
//! equilibrium and passes it down; the selected cells' equilibrium masses
//! multiply into the joint probability of the resulting strategy series.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::matgame::{self, GameError, GameSolution, MixedStrategy, PayoffMatrix};

/// Largest flattened game (rows x cols) built by [`flatten`].
pub const DEFAULT_FLAT_CAP: usize = 10_000;

// Probabilities within this distance of the maximum count as tied.
const SELECT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GutError {
    #[error("tree has no levels")]
    EmptyTree,
    #[error("level {level} has no {side} strategies")]
    EmptyLabels { level: usize, side: &'static str },
    #[error("level {level} builder failed: {msg}")]
    BuilderFailure { level: usize, msg: String },
    #[error("level {level} builder returned a {got_rows}x{got_cols} matrix, labels say {rows}x{cols}")]
    ShapeMismatch {
        level: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("flattened game would have {cells} cells, cap is {cap}")]
    CapExceeded { cells: usize, cap: usize },
    #[error("repeats must be at least 1")]
    NoRepeats,
    #[error("level {level}: {source}")]
    Game {
        level: usize,
        #[source]
        source: GameError,
    },
}

/// The cell chosen at one level: ally strategy `row` against adversary `col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellChoice {
    pub row: usize,
    pub col: usize,
}

/// Builds a level's payoffs from the context and the choices made above it.
pub type PayoffBuilder<C> =
    Box<dyn Fn(&C, &[CellChoice]) -> Result<PayoffMatrix, String> + Send + Sync>;

pub struct LevelSpec<C> {
    pub name: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    builder: PayoffBuilder<C>,
}

impl<C> LevelSpec<C> {
    pub fn new<F>(name: &str, row_labels: &[&str], col_labels: &[&str], builder: F) -> Self
    where
        F: Fn(&C, &[CellChoice]) -> Result<PayoffMatrix, String> + Send + Sync + 'static,
    {
        Self {
            name: name.to_string(),
            row_labels: row_labels.iter().map(|s| s.to_string()).collect(),
            col_labels: col_labels.iter().map(|s| s.to_string()).collect(),
            builder: Box::new(builder),
        }
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }
}

impl<C> fmt::Debug for LevelSpec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevelSpec")
            .field("name", &self.name)
            .field("row_labels", &self.row_labels)
            .field("col_labels", &self.col_labels)
            .finish_non_exhaustive()
    }
}

#[derive(Debug)]
pub struct GutTree<C> {
    levels: Vec<LevelSpec<C>>,
}

impl<C> GutTree<C> {
    pub fn new(levels: Vec<LevelSpec<C>>) -> Result<Self, GutError> {
        if levels.is_empty() {
            return Err(GutError::EmptyTree);
        }
        for (i, l) in levels.iter().enumerate() {
            if l.row_labels.is_empty() {
                return Err(GutError::EmptyLabels {
                    level: i + 1,
                    side: "ally",
                });
            }
            if l.col_labels.is_empty() {
                return Err(GutError::EmptyLabels {
                    level: i + 1,
                    side: "adversary",
                });
            }
        }
        Ok(Self { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[LevelSpec<C>] {
        &self.levels
    }

    /// Composite strategy counts `(rows, cols)` of the flattened game.
    pub fn flat_shape(&self) -> (usize, usize) {
        self.levels.iter().fold((1usize, 1usize), |(r, c), l| {
            (r.saturating_mul(l.rows()), c.saturating_mul(l.cols()))
        })
    }

    fn build(&self, index: usize, ctx: &C, above: &[CellChoice]) -> Result<PayoffMatrix, GutError> {
        let spec = &self.levels[index];
        let m = (spec.builder)(ctx, above).map_err(|msg| GutError::BuilderFailure {
            level: index + 1,
            msg,
        })?;
        if m.rows() != spec.rows() || m.cols() != spec.cols() {
            return Err(GutError::ShapeMismatch {
                level: index + 1,
                rows: spec.rows(),
                cols: spec.cols(),
                got_rows: m.rows(),
                got_cols: m.cols(),
            });
        }
        Ok(m)
    }
}

/// Outcome of one level of a descent.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelOutcome {
    /// 1-based level index.
    pub level: usize,
    pub row: usize,
    pub col: usize,
    pub row_label: String,
    pub col_label: String,
    pub payoffs: PayoffMatrix,
    pub solution: GameSolution,
    /// Equilibrium mass of the selected cell, `x_row * y_col`.
    pub probability: f64,
    /// Joint mass of the selections above this level (1 at the root).
    pub prior: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategySeries {
    pub levels: Vec<LevelOutcome>,
    pub joint_probability: f64,
}

impl StrategySeries {
    pub fn choices(&self) -> Vec<CellChoice> {
        self.levels
            .iter()
            .map(|l| CellChoice {
                row: l.row,
                col: l.col,
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.row).collect()
    }
}

/// How a concrete cell is picked from a mixed equilibrium.
pub enum Selection<'a> {
    /// Largest probability for each player, lowest index on ties.
    Argmax,
    /// Draw each player's strategy from its equilibrium distribution.
    Sample(&'a mut dyn RngCore),
}

fn sample(p: &MixedStrategy, rng: &mut dyn RngCore) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &pi) in p.probabilities().iter().enumerate() {
        acc += pi;
        if u < acc && pi > 0.0 {
            return i;
        }
    }
    // Rounding left u above the cumulative sum; take the last supported index.
    p.probabilities()
        .iter()
        .rposition(|&pi| pi > 0.0)
        .unwrap_or(0)
}

/// Descends the tree with deterministic argmax selection.
pub fn descend<C>(tree: &GutTree<C>, ctx: &C, eps: f64) -> Result<StrategySeries, GutError> {
    descend_with(tree, ctx, eps, Selection::Argmax)
}

pub fn descend_with<C>(
    tree: &GutTree<C>,
    ctx: &C,
    eps: f64,
    mut selection: Selection<'_>,
) -> Result<StrategySeries, GutError> {
    let mut chosen: Vec<CellChoice> = Vec::with_capacity(tree.depth());
    let mut levels = Vec::with_capacity(tree.depth());
    let mut prior = 1.0;
    for (i, spec) in tree.levels.iter().enumerate() {
        let payoffs = tree.build(i, ctx, &chosen)?;
        let solution = matgame::solve(&payoffs, eps).map_err(|source| GutError::Game {
            level: i + 1,
            source,
        })?;
        let (row, col) = match &mut selection {
            Selection::Argmax => (
                solution.row_strategy.argmax(SELECT_TOL),
                solution.col_strategy.argmax(SELECT_TOL),
            ),
            Selection::Sample(rng) => (
                sample(&solution.row_strategy, &mut **rng),
                sample(&solution.col_strategy, &mut **rng),
            ),
        };
        let probability = solution.row_strategy.probabilities()[row]
            * solution.col_strategy.probabilities()[col];
        levels.push(LevelOutcome {
            level: i + 1,
            row,
            col,
            row_label: spec.row_labels[row].clone(),
            col_label: spec.col_labels[col].clone(),
            payoffs,
            solution,
            probability,
            prior,
        });
        prior *= probability;
        chosen.push(CellChoice { row, col });
    }
    Ok(StrategySeries {
        joint_probability: joint_probability_of(&levels),
        levels,
    })
}

fn joint_probability_of(levels: &[LevelOutcome]) -> f64 {
    levels.iter().map(|l| l.probability).product()
}

/// Chain-rule product of the per-level selection probabilities.
pub fn joint_probability(series: &StrategySeries) -> f64 {
    joint_probability_of(&series.levels)
}

/// The one-level game over composite strategies, with additive utilities
/// along each composite path. Composite indices are mixed-radix with level 1
/// most significant.
pub fn flatten<C>(tree: &GutTree<C>, ctx: &C) -> Result<PayoffMatrix, GutError> {
    flatten_capped(tree, ctx, DEFAULT_FLAT_CAP)
}

pub fn flatten_capped<C>(tree: &GutTree<C>, ctx: &C, cap: usize) -> Result<PayoffMatrix, GutError> {
    let (rows, cols) = tree.flat_shape();
    let cells = rows.saturating_mul(cols);
    if cells > cap {
        return Err(GutError::CapExceeded { cells, cap });
    }
    let mut entries = vec![0.0; cells];
    let mut path = Vec::with_capacity(tree.depth());
    fill_flat(tree, ctx, 0, &mut path, 0.0, 0, 0, cols, &mut entries)?;
    PayoffMatrix::new(rows, cols, entries).map_err(|source| GutError::Game { level: 0, source })
}

#[allow(clippy::too_many_arguments)]
fn fill_flat<C>(
    tree: &GutTree<C>,
    ctx: &C,
    depth: usize,
    path: &mut Vec<CellChoice>,
    acc: f64,
    row: usize,
    col: usize,
    flat_cols: usize,
    out: &mut [f64],
) -> Result<(), GutError> {
    if depth == tree.depth() {
        out[row * flat_cols + col] = acc;
        return Ok(());
    }
    let m = tree.build(depth, ctx, path)?;
    for g in 0..m.rows() {
        for k in 0..m.cols() {
            path.push(CellChoice { row: g, col: k });
            fill_flat(
                tree,
                ctx,
                depth + 1,
                path,
                acc + m.get(g, k),
                row * m.rows() + g,
                col * m.cols() + k,
                flat_cols,
                out,
            )?;
            path.pop();
        }
    }
    Ok(())
}

/// Splits a composite flat index back into per-level indices.
pub fn decompose_index(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d = index % r;
        index /= r;
    }
    digits
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

/// Median wall time of a tree descent and of solving the flattened game.
///
/// Timings are only meaningful on an otherwise idle machine.
pub fn time_compare<C>(
    tree: &GutTree<C>,
    ctx: &C,
    repeats: usize,
) -> Result<(Duration, Duration), GutError> {
    if repeats == 0 {
        return Err(GutError::NoRepeats);
    }
    let (rows, cols) = tree.flat_shape();
    if rows.saturating_mul(cols) > DEFAULT_FLAT_CAP {
        return Err(GutError::CapExceeded {
            cells: rows.saturating_mul(cols),
            cap: DEFAULT_FLAT_CAP,
        });
    }
    let mut gut = Vec::with_capacity(repeats);
    let mut flat = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        std::hint::black_box(descend(tree, ctx, matgame::DEFAULT_EPS)?);
        gut.push(start.elapsed());

        let start = Instant::now();
        let m = flatten(tree, ctx)?;
        let s = matgame::solve(&m, matgame::DEFAULT_EPS)
            .map_err(|source| GutError::Game { level: 0, source })?;
        std::hint::black_box(s);
        flat.push(start.elapsed());
    }
    Ok((median(gut), median(flat)))
}

/// A tree whose level-i game is `ctx[i]` whatever was chosen above it;
/// handy for benchmarks and tests.
pub fn fixed_levels_tree(shapes: &[(usize, usize)]) -> Result<GutTree<Vec<PayoffMatrix>>, GutError> {
    let levels = shapes
        .iter()
        .enumerate()
        .map(|(i, &(r, c))| {
            let rows: Vec<String> = (0..r).map(|k| format!("r{k}")).collect();
            let cols: Vec<String> = (0..c).map(|k| format!("c{k}")).collect();
            let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
            let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
            LevelSpec::new(&format!("level{}", i + 1), &rows, &cols, move |ctx: &Vec<PayoffMatrix>, _: &[CellChoice]| {
                ctx.get(i).cloned().ok_or_else(|| format!("no matrix for level {}", i + 1))
            })
        })
        .collect();
    GutTree::new(levels)
}

/// Uniform payoffs in `[-10, 10]` for each shape.
pub fn random_levels(shapes: &[(usize, usize)], rng: &mut impl Rng) -> Vec<PayoffMatrix> {
    shapes
        .iter()
        .map(|&(r, c)| {
            let e = (0..r * c).map(|_| rng.random_range(-10.0..=10.0)).collect();
            PayoffMatrix::new(r, c, e).expect("shape matches entries")
        })
        .collect()
}
