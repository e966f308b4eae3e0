//! Plain-text matrix input and key-value solution output.
//!
//! Input: a header line `l m`, then `l` lines of `m` whitespace-separated
//! reals. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use thiserror::Error;

use super::{GameError, GameSolution, PayoffMatrix};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("missing `rows cols` header")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} matrix rows, found {got}")]
    RowCount { expected: usize, got: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

pub fn parse_matrix(input: &str) -> Result<PayoffMatrix, ParseError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| ParseError::Syntax {
                line: hline,
                msg: format!("bad dimension `{t}`"),
            })
        })
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(ParseError::Syntax {
            line: hline,
            msg: "header must be `rows cols`".into(),
        });
    };

    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (line, text) in lines {
        if seen == rows {
            return Err(ParseError::RowCount {
                expected: rows,
                got: seen + 1,
            });
        }
        let before = entries.len();
        for tok in text.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| ParseError::Syntax {
                line,
                msg: format!("bad number `{tok}`"),
            })?;
            entries.push(v);
        }
        if entries.len() - before != cols {
            return Err(ParseError::Syntax {
                line,
                msg: format!("expected {cols} values, found {}", entries.len() - before),
            });
        }
        seen += 1;
    }
    if seen != rows {
        return Err(ParseError::RowCount {
            expected: rows,
            got: seen,
        });
    }
    Ok(PayoffMatrix::new(rows, cols, entries)?)
}

fn join(p: &[f64]) -> String {
    p.iter()
        .map(|v| format!("{v:.9}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a solution as `key: value` lines.
pub fn format_solution(s: &GameSolution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", s.kind);
    let _ = writeln!(out, "row_strategy: {}", join(s.row_strategy.probabilities()));
    let _ = writeln!(out, "col_strategy: {}", join(s.col_strategy.probabilities()));
    let _ = writeln!(out, "value: {:.9}", s.value);
    let _ = writeln!(out, "epsilon: {:.3e}", s.epsilon);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgame::{solve, DEFAULT_EPS};

    #[test]
    fn parses_and_formats() {
        let m = parse_matrix("# pennies\n2 2\n1 -1\n\n-1 1\n").unwrap();
        assert_eq!(m.entries(), &[1.0, -1.0, -1.0, 1.0]);
        let out = format_solution(&solve(&m, DEFAULT_EPS).unwrap());
        assert!(out.starts_with("kind: mixed\n"));
        assert!(out.contains("row_strategy: 0.500000000 0.500000000\n"));
        assert!(out.contains("value: 0.000000000") || out.contains("value: -0.000000000"));
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_matrix(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_matrix("2 2\n1 2\n"),
            Err(ParseError::RowCount { expected: 2, got: 1 })
        ));
        assert!(matches!(
            parse_matrix("1 2\n1 2 3\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("1 1\nx\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_matrix("0 1\n"), Err(ParseError::Game(_))));
    }
}
