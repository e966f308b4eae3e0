//! Planar points and circular obstacles.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::ExploreError;

/// Clearance kept between a detour waypoint and the obstacle edge.
pub const AVOID_MARGIN: f64 = 0.1;

// Largest arc (radians) swept per waypoint while following an obstacle edge.
const FOLLOW_STEP: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Unit vector in the same direction, or `None` for (near) zero vectors.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 1e-12).then(|| self * (1.0 / n))
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Moves at most `max` toward `to`.
    pub fn step_toward(self, to: Vec2, max: f64) -> Vec2 {
        let d = to - self;
        let n = d.norm();
        if n <= max {
            to
        } else {
            self + d * (max / n)
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Mean of a non-empty set of points.
pub fn centroid(points: impl IntoIterator<Item = Vec2>) -> Option<Vec2> {
    let mut sum = Vec2::ZERO;
    let mut n = 0usize;
    for p in points {
        sum += p;
        n += 1;
    }
    (n > 0).then(|| sum * (1.0 / n as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Vec2,
    pub radius: f64,
}

impl Circle {
    pub fn new(x: f64, y: f64, radius: f64) -> Self {
        Self {
            center: Vec2::new(x, y),
            radius,
        }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.dist(self.center) < self.radius
    }

    /// Segment parameter of the first point within `r` of the center, if
    /// the segment comes that close.
    fn entry(&self, from: Vec2, to: Vec2, r: f64) -> Option<f64> {
        let d = to - from;
        let f = from - self.center;
        let a = d.dot(d);
        if a < 1e-18 {
            return (f.norm() < r).then_some(0.0);
        }
        let b = 2.0 * f.dot(d);
        let c = f.dot(f) - r * r;
        let disc = b * b - 4.0 * a * c;
        if disc <= 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        let t0 = (-b - sq) / (2.0 * a);
        let t1 = (-b + sq) / (2.0 * a);
        if t1 <= 0.0 || t0 >= 1.0 {
            None
        } else {
            Some(t0.max(0.0))
        }
    }
}

/// Next waypoint on the way from `from` to `to`.
///
/// Returns `to` when the straight segment clears every obstacle. Otherwise
/// heads for the tangent point of the first blocking circle inflated by
/// [`AVOID_MARGIN`], or, when already on that inflated rim, sweeps around it
/// toward the goal side.
pub fn avoid_obstacles(from: Vec2, to: Vec2, obstacles: &[Circle]) -> Result<Vec2, ExploreError> {
    if obstacles.iter().any(|o| o.contains(to)) {
        return Err(ExploreError::NoPath);
    }
    // Blocking uses half the margin so an agent riding the inflated rim is
    // not considered blocked by the circle it is leaving.
    let first = obstacles
        .iter()
        .filter_map(|o| o.entry(from, to, o.radius + AVOID_MARGIN * 0.5).map(|t| (t, o)))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    let Some((_, obs)) = first else {
        return Ok(to);
    };
    let rim = obs.radius + AVOID_MARGIN;
    let rel = from - obs.center;
    let dist = rel.norm();
    if dist > rim {
        let alpha = (rim / dist).acos();
        let u = rel * (1.0 / dist);
        let t1 = obs.center + u.rotate(alpha) * rim;
        let t2 = obs.center + u.rotate(-alpha) * rim;
        return Ok(if t2.dist(to) < t1.dist(to) { t2 } else { t1 });
    }
    // On (or inside) the rim: follow the edge toward the goal's side.
    let u = rel.normalized().unwrap_or(Vec2::new(1.0, 0.0));
    let goal = to - obs.center;
    let sign = if u.cross(goal) >= 0.0 { 1.0 } else { -1.0 };
    let gap = u.dot(goal.normalized().unwrap_or(u)).clamp(-1.0, 1.0).acos();
    let sweep = gap.min(FOLLOW_STEP).max(1e-3);
    Ok(obs.center + u.rotate(sign * sweep) * rim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unobstructed_is_identity() {
        let to = Vec2::new(3.0, 4.0);
        assert_eq!(avoid_obstacles(Vec2::ZERO, to, &[]).unwrap(), to);
        let off = [Circle::new(0.0, 5.0, 1.0)];
        assert_eq!(avoid_obstacles(Vec2::ZERO, Vec2::new(5.0, 0.0), &off).unwrap(), Vec2::new(5.0, 0.0));
    }

    #[test]
    fn midpoint_obstacle_gives_tangent_waypoint() {
        let obs = Circle::new(5.0, 0.0, 1.0);
        let w = avoid_obstacles(Vec2::ZERO, Vec2::new(10.0, 0.0), &[obs]).unwrap();
        let clearance = w.dist(obs.center) - obs.radius;
        assert!(clearance >= AVOID_MARGIN - 1e-12, "clearance {clearance}");
        // Tangency: radius at the waypoint is perpendicular to the approach.
        assert!((w - obs.center).dot(w).abs() < 1e-9);
        assert!(w.y.abs() > 0.5);
        // The approach segment never enters the obstacle.
        for i in 0..=100 {
            let p = w * (i as f64 / 100.0);
            assert!(!obs.contains(p));
        }
    }

    #[test]
    fn goal_inside_obstacle_is_no_path() {
        let obs = Circle::new(5.0, 0.0, 1.0);
        assert!(matches!(
            avoid_obstacles(Vec2::ZERO, Vec2::new(5.2, 0.1), &[obs]),
            Err(ExploreError::NoPath)
        ));
    }

    #[test]
    fn following_waypoints_reaches_goal() {
        let obstacles = [Circle::new(5.0, 0.0, 1.0), Circle::new(8.0, 1.5, 0.7)];
        let goal = Vec2::new(10.0, 0.2);
        let mut p = Vec2::ZERO;
        for _ in 0..2000 {
            let w = avoid_obstacles(p, goal, &obstacles).unwrap();
            p = p.step_toward(w, 0.05);
            assert!(obstacles.iter().all(|o| !o.contains(p)), "entered obstacle at {p:?}");
            if p == goal {
                return;
            }
        }
        panic!("did not reach goal, stuck at {p:?}");
    }

    #[test]
    fn vector_helpers() {
        let v = Vec2::new(3.0, 4.0);
        assert_eq!(v.norm(), 5.0);
        assert!(Vec2::ZERO.step_toward(v, 1.0).dist(Vec2::new(0.6, 0.8)) < 1e-15);
        assert_eq!(Vec2::ZERO.step_toward(v, 10.0), v);
        assert!(Vec2::ZERO.normalized().is_none());
        assert_eq!(centroid([Vec2::new(0.0, 0.0), Vec2::new(2.0, 4.0)]), Some(Vec2::new(1.0, 2.0)));
    }
}
