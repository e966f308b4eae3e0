//! Formation slot layouts.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::Vec2;
use super::ExploreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormationKind {
    Patrol,
    AttackTriangle,
    DefendPolygon,
    TreasureCircle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Formation {
    pub kind: FormationKind,
    pub spacing: f64,
    /// Direction of travel; the zero vector means +x.
    pub heading: Vec2,
}

impl Formation {
    pub fn new(kind: FormationKind, spacing: f64, heading: Vec2) -> Self {
        Self {
            kind,
            spacing,
            heading,
        }
    }

    /// Circumradius of the ring layouts for `n` members.
    pub fn ring_radius(kind: FormationKind, spacing: f64, n: usize) -> f64 {
        let side_based = if n >= 2 {
            spacing / (2.0 * (PI / n as f64).sin())
        } else {
            0.0
        };
        match kind {
            FormationKind::TreasureCircle => side_based.max(spacing),
            _ => side_based,
        }
    }
}

/// Slot for every member, as `(id, point)` sorted by id.
///
/// - `AttackTriangle`: equilateral lattice wedge (60° apex) with the apex on
///   the anchor, opening backwards from the heading.
/// - `DefendPolygon`: regular polygon with side `spacing` centered on the anchor.
/// - `TreasureCircle`: equally spaced ring of radius at least `spacing`.
/// - `Patrol`: line abreast across the heading, centered on the anchor.
///
/// A lone member always sits on the anchor.
pub fn formation_targets(
    f: &Formation,
    members: &[usize],
    anchor: Vec2,
) -> Result<Vec<(usize, Vec2)>, ExploreError> {
    if members.is_empty() {
        return Err(ExploreError::EmptyGroup);
    }
    if !(f.spacing > 0.0) || !f.spacing.is_finite() {
        return Err(ExploreError::Domain(format!("formation spacing must be positive, got {}", f.spacing)));
    }
    let mut ids = members.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let n = ids.len();
    if n == 1 {
        return Ok(vec![(ids[0], anchor)]);
    }
    let h = f.heading.normalized().unwrap_or(Vec2::new(1.0, 0.0));
    let side = h.perp();
    let s = f.spacing;
    let slots: Vec<Vec2> = match f.kind {
        FormationKind::Patrol => (0..n)
            .map(|i| anchor + side * ((i as f64 - (n - 1) as f64 / 2.0) * s))
            .collect(),
        FormationKind::AttackTriangle => {
            let row_depth = s * 3f64.sqrt() / 2.0;
            let mut out = Vec::with_capacity(n);
            let mut row = 0usize;
            while out.len() < n {
                for j in 0..=row {
                    if out.len() == n {
                        break;
                    }
                    let lateral = (j as f64 - row as f64 / 2.0) * s;
                    out.push(anchor - h * (row as f64 * row_depth) + side * lateral);
                }
                row += 1;
            }
            out
        }
        FormationKind::DefendPolygon | FormationKind::TreasureCircle => {
            let r = Formation::ring_radius(f.kind, s, n);
            (0..n)
                .map(|i| anchor + h.rotate(2.0 * PI * i as f64 / n as f64) * r)
                .collect()
        }
    };
    Ok(ids.into_iter().zip(slots).collect())
}
