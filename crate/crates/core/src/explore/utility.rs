//! Per-level utility models: winning chance, relative energy cost and
//! relative HP cost.

use serde::{Deserialize, Serialize};

use super::ExploreError;

/// `intercept + slope * phi`, an expected hit rate as a function of agent size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HitRate {
    pub intercept: f64,
    pub slope: f64,
}

impl Default for HitRate {
    fn default() -> Self {
        Self {
            intercept: 1.0,
            slope: 1.0,
        }
    }
}

impl HitRate {
    pub fn at(&self, phi: f64) -> f64 {
        self.intercept + self.slope * phi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct UtilityCoeffs {
    pub a: f64,
    pub b0: f64,
    pub b1: f64,
    pub c0: f64,
    pub c1: f64,
    /// HP an explorer loses per alien hit.
    pub h_e: f64,
    /// HP an alien loses per explorer hit.
    pub h_m: f64,
    pub lambda_e: HitRate,
    pub lambda_m: HitRate,
}

impl Default for UtilityCoeffs {
    fn default() -> Self {
        Self {
            a: 0.5,
            b0: 0.0,
            b1: 1.0,
            c0: 0.0,
            c1: 1.0,
            h_e: 0.15,
            h_m: 0.05,
            lambda_e: HitRate::default(),
            lambda_m: HitRate::default(),
        }
    }
}

impl UtilityCoeffs {
    pub fn validate(&self) -> Result<(), ExploreError> {
        let all = [self.a, self.b0, self.b1, self.c0, self.c1, self.h_e, self.h_m];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(ExploreError::Domain("utility coefficients must be finite".into()));
        }
        if self.a <= 0.0 {
            return Err(ExploreError::Domain("coefficient a must be positive".into()));
        }
        Ok(())
    }
}

/// `a * (t_e / t_a)^(m / n)`, unclamped.
///
/// `t_e`, `t_a` are mean energies of the explorer and alien sides, `n` and
/// `m` their head counts.
pub fn winning_utility(t_e: f64, t_a: f64, n: usize, m: usize, a: f64) -> Result<f64, ExploreError> {
    if n == 0 {
        return Err(ExploreError::Domain("winning utility needs n >= 1".into()));
    }
    if !(t_a > 0.0) || !t_a.is_finite() {
        return Err(ExploreError::Domain(format!("winning utility needs t_a > 0, got {t_a}")));
    }
    if !(t_e >= 0.0) || !t_e.is_finite() {
        return Err(ExploreError::Domain(format!("winning utility needs t_e >= 0, got {t_e}")));
    }
    Ok(a * (t_e / t_a).powf(m as f64 / n as f64))
}

/// [`winning_utility`] clamped to `[0, 1]` for use as a success probability.
pub fn win_probability(t_e: f64, t_a: f64, n: usize, m: usize, a: f64) -> Result<f64, ExploreError> {
    winning_utility(t_e, t_a, n, m, a).map(|w| w.clamp(0.0, 1.0))
}

/// `b0 + b1 * (n - m) * d`: the Gaussian-mean integral over a unit-variance
/// normal centered at the group distance `d`, in closed form.
pub fn energy_utility(n: usize, m: usize, d: f64, b0: f64, b1: f64) -> f64 {
    b0 + b1 * (n as f64 - m as f64) * d
}

/// `c0 + c1 * (k * h_m * lambda_m(phi_m) - g * h_e * lambda_e(phi_e))`.
///
/// `k` explorers and `g` aliens are attacking; hit counts are Poisson so
/// each side's expected damage collapses to its rate. Positive values mean
/// an expected HP advantage for the explorers.
pub fn hp_utility(k: usize, g: usize, phi_e: f64, phi_m: f64, c: &UtilityCoeffs) -> f64 {
    let dealt = k as f64 * c.h_m * c.lambda_m.at(phi_m);
    let taken = g as f64 * c.h_e * c.lambda_e.at(phi_e);
    c.c0 + c.c1 * (dealt - taken)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn winning_examples() {
        assert_eq!(winning_utility(70.0, 70.0, 3, 9, 1.0).unwrap(), 1.0);
        assert_eq!(winning_utility(20.0, 90.0, 4, 0, 1.0).unwrap(), 1.0);
        assert!((winning_utility(50.0, 100.0, 2, 4, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(winning_utility(50.0, 0.0, 2, 4, 1.0).is_err());
        assert!(winning_utility(50.0, 10.0, 0, 4, 1.0).is_err());
        assert_eq!(win_probability(100.0, 10.0, 1, 2, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy_utility(4, 4, 3.3, 0.7, 2.0), 0.7);
        assert_eq!(energy_utility(5, 1, 3.3, 0.7, 0.0), 0.7);
        assert_eq!(energy_utility(3, 1, 2.0, 0.0, 1.0), 4.0);
    }

    #[test]
    fn hp_examples() {
        let mut c = UtilityCoeffs {
            c0: 0.3,
            ..Default::default()
        };
        assert_eq!(hp_utility(0, 0, 0.5, 0.5, &c), 0.3);
        // Equal per-side rates cancel.
        c.h_e = 0.1;
        c.h_m = 0.1;
        assert!((hp_utility(3, 3, 0.5, 0.5, &c) - 0.3).abs() < 1e-15);
        let c = UtilityCoeffs {
            c0: 0.0,
            c1: 1.0,
            h_m: 0.15,
            h_e: 0.05,
            lambda_e: HitRate { intercept: 1.0, slope: 0.0 },
            lambda_m: HitRate { intercept: 1.0, slope: 0.0 },
            ..Default::default()
        };
        assert!((hp_utility(2, 1, 0.3, 0.3, &c) - 0.25).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn winning_monotone(t_e in 1.0f64..100.0, dt in 0.01f64..50.0, t_a in 1.0f64..100.0,
                            n in 1usize..30, m in 1usize..30, a in 0.1f64..2.0) {
            let lo = winning_utility(t_e, t_a, n, m, a).unwrap();
            let hi = winning_utility(t_e + dt, t_a, n, m, a).unwrap();
            prop_assert!(hi > lo);
            let hi_a = winning_utility(t_e, t_a + dt, n, m, a).unwrap();
            prop_assert!(hi_a < lo);
        }
    }
}
