//! Dense tableau simplex for the positive zero-sum game program.
//!
//! With every payoff strictly positive, the column player's program
//!
//! ```text
//! maximize   sum_k q_k
//! subject to sum_k a_gk q_k <= 1   for every row g
//!            q >= 0
//! ```
//!
//! is feasible at `q = 0`, so no phase one is needed. At the optimum
//! `sum q = 1 / v` and the dual prices of the row constraints give the row
//! player's scaled strategy. Bland's rule keeps degenerate pivots from cycling.

/// Reduced costs above `-COST_TOL` count as optimal.
const COST_TOL: f64 = 1e-12;
/// Smallest admissible pivot. Entries live in [1, 2], so anything this
/// small is cancellation noise (e.g. from near-duplicate rows) and pivoting
/// on it would blow up round-off.
const PIVOT_TOL: f64 = 1e-9;

pub(super) struct LpSolution {
    pub row: Vec<f64>,
    pub col: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug)]
pub(super) struct PivotLimit {
    pub iterations: usize,
}

/// `a` is row-major `rows x cols` with all entries > 0.
pub(super) fn solve_positive_game(
    rows: usize,
    cols: usize,
    a: &[f64],
) -> Result<LpSolution, PivotLimit> {
    let width = cols + rows + 1;
    let rhs = width - 1;
    // Constraint rows followed by the objective row (reduced costs).
    let mut t = vec![0.0; (rows + 1) * width];
    for g in 0..rows {
        let line = &mut t[g * width..(g + 1) * width];
        line[..cols].copy_from_slice(&a[g * cols..(g + 1) * cols]);
        line[cols + g] = 1.0;
        line[rhs] = 1.0;
    }
    let obj = rows * width;
    for k in 0..cols {
        t[obj + k] = -1.0;
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // Bland's rule terminates in at most C(rows+cols, rows) pivots; real games
    // need far fewer, so the cap only guards against numerical trouble.
    let limit = 50 * (rows + cols) + 100;
    let mut iterations = 0;
    loop {
        let entering = (0..cols + rows).find(|&j| t[obj + j] < -COST_TOL);
        let Some(q) = entering else { break };
        if iterations == limit {
            return Err(PivotLimit { iterations });
        }
        iterations += 1;

        let mut leave: Option<(usize, f64)> = None;
        for g in 0..rows {
            let coef = t[g * width + q];
            if coef > PIVOT_TOL {
                let ratio = t[g * width + rhs] / coef;
                leave = match leave {
                    None => Some((g, ratio)),
                    Some((h, best)) => {
                        if ratio < best - COST_TOL
                            || (ratio <= best + COST_TOL && basis[g] < basis[h])
                        {
                            Some((g, ratio))
                        } else {
                            Some((h, best))
                        }
                    }
                };
            }
        }
        // The feasible region is bounded because every a_gk > 0.
        let (p, _) = leave.expect("bounded program always has a leaving row");
        pivot(&mut t, width, rows + 1, p, q);
        basis[p] = q;
    }

    let mut col = vec![0.0; cols];
    for (g, &b) in basis.iter().enumerate() {
        if b < cols {
            col[b] = t[g * width + rhs];
        }
    }
    let row: Vec<f64> = (0..rows).map(|g| t[obj + cols + g]).collect();
    Ok(LpSolution {
        row,
        col,
        iterations,
    })
}

fn pivot(t: &mut [f64], width: usize, height: usize, p: usize, q: usize) {
    let pv = t[p * width + q];
    for j in 0..width {
        t[p * width + j] /= pv;
    }
    for i in 0..height {
        if i == p {
            continue;
        }
        let factor = t[i * width + q];
        if factor == 0.0 {
            continue;
        }
        for j in 0..width {
            t[i * width + j] -= factor * t[p * width + j];
        }
    }
}
