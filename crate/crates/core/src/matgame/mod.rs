//! Two-player zero-sum normal-form games.
//!
//! The row player maximizes and the column player minimizes the entries of a
//! [`PayoffMatrix`]. Games with a saddle point are answered directly; the rest
//! are solved as the maximin linear program (see [`simplex`]).

mod simplex;
pub mod text;

pub use text::{format_solution, parse_matrix, ParseError};

use std::fmt;

use thiserror::Error;

/// Default best-response tolerance for [`solve`] and [`solve_mixed`].
pub const DEFAULT_EPS: f64 = 1e-6;

const SUM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("payoff matrix must have at least one row and one column (got {rows}x{cols})")]
    Empty { rows: usize, cols: usize },
    #[error("expected {expected} entries for the given shape, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("payoff entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {what} has {got} components, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("solver did not reach the requested gap {eps:e} (best gap {gap:e} after {iterations} pivots)")]
    NonConvergence {
        eps: f64,
        gap: f64,
        iterations: usize,
    },
}

/// Payoffs to the row player, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl PayoffMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self, GameError> {
        if rows == 0 || cols == 0 {
            return Err(GameError::Empty { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(GameError::ShapeMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
            return Err(GameError::NonFinite {
                row: i / cols,
                col: i % cols,
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, GameError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(GameError::ShapeMismatch {
                    expected: rows.len() * cols,
                    got: entries.len() + row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, entries)
    }

    /// A matrix where every entry is `value`.
    pub fn constant(rows: usize, cols: usize, value: f64) -> Result<Self, GameError> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Returns `scale * self + shift` entry-wise.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self, GameError> {
        Self::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|v| scale * v + shift).collect(),
        )
    }

    fn min_max(&self) -> (f64, f64) {
        self.entries
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

impl fmt::Display for PayoffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| format!("{v:.4}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A probability distribution over one player's pure strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    pub fn new(probabilities: Vec<f64>) -> Result<Self, GameError> {
        if probabilities.is_empty() {
            return Err(GameError::InvalidStrategy("no components".into()));
        }
        if let Some(p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(GameError::InvalidStrategy(format!(
                "component {p} is negative or not finite"
            )));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(GameError::InvalidStrategy(format!(
                "components sum to {sum}, not 1"
            )));
        }
        Ok(Self(probabilities))
    }

    /// The degenerate strategy that always plays `index`.
    pub fn pure(len: usize, index: usize) -> Self {
        assert!(index < len, "pure strategy index {index} out of range {len}");
        let mut p = vec![0.0; len];
        p[index] = 1.0;
        Self(p)
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len > 0);
        Self(vec![1.0 / len as f64; len])
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.0.iter().filter(|&&p| p > 0.0).count() == 1
    }

    /// Index of the largest probability; ties within `tol` go to the lowest index.
    pub fn argmax(&self, tol: f64) -> usize {
        let best = self.0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        self.0
            .iter()
            .position(|&p| p >= best - tol)
            .expect("non-empty strategy")
    }

    /// Projects an approximately stochastic vector onto the simplex by
    /// clamping negatives and renormalizing.
    fn from_approximate(mut raw: Vec<f64>) -> Self {
        for p in raw.iter_mut() {
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = raw.iter().sum();
        if sum > 0.0 {
            raw.iter_mut().for_each(|p| *p /= sum);
        } else {
            let n = raw.len() as f64;
            raw.iter_mut().for_each(|p| *p = 1.0 / n);
        }
        Self(raw)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Pure,
    Mixed,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::Pure => "pure",
            SolutionKind::Mixed => "mixed",
        })
    }
}

/// An equilibrium of a zero-sum game together with its achieved gap.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    pub kind: SolutionKind,
    pub row_strategy: MixedStrategy,
    pub col_strategy: MixedStrategy,
    /// Expected payoff to the row player under the two strategies.
    pub value: f64,
    /// Largest unilateral improvement available to either player.
    pub epsilon: f64,
}

/// A pure-strategy saddle point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Saddle {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

/// Finds a cell that is the minimum of its row and the maximum of its column.
///
/// Such a cell exists exactly when the largest row minimum equals the smallest
/// column maximum. Scanning is row-major, so ties resolve to the lowest row and
/// then the lowest column.
pub fn find_pure_saddle(m: &PayoffMatrix) -> Option<Saddle> {
    let row_min: Vec<f64> = (0..m.rows)
        .map(|g| m.row(g).iter().cloned().fold(f64::INFINITY, f64::min))
        .collect();
    let col_max: Vec<f64> = (0..m.cols)
        .map(|k| {
            (0..m.rows)
                .map(|g| m.get(g, k))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    for g in 0..m.rows {
        for k in 0..m.cols {
            let v = m.get(g, k);
            if v == row_min[g] && v == col_max[k] {
                return Some(Saddle {
                    row: g,
                    col: k,
                    value: v,
                });
            }
        }
    }
    None
}

fn check_dims(m: &PayoffMatrix, x: &MixedStrategy, y: &MixedStrategy) -> Result<(), GameError> {
    if x.len() != m.rows {
        return Err(GameError::DimensionMismatch {
            what: "row strategy",
            expected: m.rows,
            got: x.len(),
        });
    }
    if y.len() != m.cols {
        return Err(GameError::DimensionMismatch {
            what: "column strategy",
            expected: m.cols,
            got: y.len(),
        });
    }
    Ok(())
}

// Payoff of each pure row against `y`.
fn row_payoffs(m: &PayoffMatrix, y: &[f64]) -> Vec<f64> {
    (0..m.rows)
        .map(|g| m.row(g).iter().zip(y).map(|(u, yk)| u * yk).sum())
        .collect()
}

// Payoff of `x` against each pure column.
fn col_payoffs(m: &PayoffMatrix, x: &[f64]) -> Vec<f64> {
    (0..m.cols)
        .map(|k| (0..m.rows).map(|g| m.get(g, k) * x[g]).sum())
        .collect()
}

/// Expected payoff to the row player, `sum_g sum_k u_gk x_g y_k`.
pub fn expected_value(
    m: &PayoffMatrix,
    x: &MixedStrategy,
    y: &MixedStrategy,
) -> Result<f64, GameError> {
    check_dims(m, x, y)?;
    Ok(row_payoffs(m, &y.0).iter().zip(&x.0).map(|(r, xg)| r * xg).sum())
}

/// How much each player could gain by deviating to a pure strategy.
///
/// Returns `(gap_row, gap_col)`; both are non-negative up to rounding.
pub fn best_response_gap(
    m: &PayoffMatrix,
    x: &MixedStrategy,
    y: &MixedStrategy,
) -> Result<(f64, f64), GameError> {
    check_dims(m, x, y)?;
    let value = expected_value(m, x, y)?;
    let best_row = row_payoffs(m, &y.0)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let best_col = col_payoffs(m, &x.0)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok((best_row - value, value - best_col))
}

fn check_eps(eps: f64) -> Result<(), GameError> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(GameError::InvalidTolerance(eps))
    }
}

fn finish(
    m: &PayoffMatrix,
    kind: SolutionKind,
    x: MixedStrategy,
    y: MixedStrategy,
) -> GameSolution {
    let value = expected_value(m, &x, &y).expect("dimensions checked by construction");
    let (gr, gc) = best_response_gap(m, &x, &y).expect("dimensions checked by construction");
    GameSolution {
        kind,
        row_strategy: x,
        col_strategy: y,
        value,
        epsilon: gr.max(gc).max(0.0),
    }
}

/// Solves the maximin linear program for both players' optimal mixed strategies.
pub fn solve_mixed(m: &PayoffMatrix, eps: f64) -> Result<GameSolution, GameError> {
    check_eps(eps)?;
    let (lo, hi) = m.min_max();
    let span = hi - lo;
    if span == 0.0 {
        // Every profile is an equilibrium of a constant game.
        return Ok(finish(
            m,
            SolutionKind::Mixed,
            MixedStrategy::pure(m.rows, 0),
            MixedStrategy::pure(m.cols, 0),
        ));
    }
    // Normalize to [1, 2] so the program is feasible at the origin and the
    // pivot sequence is invariant to positive affine rescaling of the game.
    let normalized: Vec<f64> = m.entries.iter().map(|v| 1.0 + (v - lo) / span).collect();
    let lp = simplex::solve_positive_game(m.rows, m.cols, &normalized);
    let (x, y, iterations) = match lp {
        Ok(s) => (s.row, s.col, s.iterations),
        Err(simplex::PivotLimit { iterations }) => {
            return Err(GameError::NonConvergence {
                eps,
                gap: f64::INFINITY,
                iterations,
            })
        }
    };
    let solution = finish(
        m,
        SolutionKind::Mixed,
        MixedStrategy::from_approximate(x),
        MixedStrategy::from_approximate(y),
    );
    if solution.epsilon > eps {
        return Err(GameError::NonConvergence {
            eps,
            gap: solution.epsilon,
            iterations,
        });
    }
    Ok(solution)
}

/// Returns the pure saddle when one exists, otherwise the mixed equilibrium.
pub fn solve(m: &PayoffMatrix, eps: f64) -> Result<GameSolution, GameError> {
    check_eps(eps)?;
    match find_pure_saddle(m) {
        Some(s) => Ok(finish(
            m,
            SolutionKind::Pure,
            MixedStrategy::pure(m.rows, s.row),
            MixedStrategy::pure(m.cols, s.col),
        )),
        None => solve_mixed(m, eps),
    }
}
