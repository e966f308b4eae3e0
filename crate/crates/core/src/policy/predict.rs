//! Regressors that estimate adversary energy state from observed HP costs.

use rand::RngCore;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RegressionCoeffs {
    /// Unit-cost coefficients, constant/linear/quadratic order.
    pub uc: [f64; 3],
    /// System-cost coefficients, same order.
    pub asc: [f64; 3],
    /// Standard deviation of the additive Gaussian noise.
    pub noise: f64,
}

impl Default for RegressionCoeffs {
    fn default() -> Self {
        Self {
            uc: [0.08, 0.03, 0.0001],
            asc: [0.03, 0.0003, 0.00001],
            noise: 1.0,
        }
    }
}

/// Predicted unit attacking energy cost and current energy level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub e_uc: f64,
    pub e_el: f64,
}

fn noise(sd: f64, rng: &mut dyn RngCore) -> f64 {
    if sd > 0.0 {
        Normal::new(0.0, sd).map(|n| n.sample(rng)).unwrap_or(0.0)
    } else {
        0.0
    }
}

/// `E_uc = HP_uc * uc0 + e`, `E_el = 100 - HP_asc * asc0 + e`.
pub fn predict_linear(hp_uc: f64, hp_asc: f64, c: &RegressionCoeffs, rng: &mut dyn RngCore) -> Prediction {
    let e_uc = hp_uc * c.uc[0] + noise(c.noise, rng);
    let e_el = 100.0 - hp_asc * c.asc[0] + noise(c.noise, rng);
    Prediction { e_uc, e_el }
}

/// Quadratic forms using the linear and quadratic coefficients.
pub fn predict_poly(hp_uc: f64, hp_asc: f64, c: &RegressionCoeffs, rng: &mut dyn RngCore) -> Prediction {
    let e_uc = hp_uc * hp_uc * c.uc[2] + hp_uc * c.uc[1] + noise(c.noise, rng);
    let e_el = 100.0 - hp_asc * hp_asc * c.asc[2] - hp_asc * c.asc[1] + noise(c.noise, rng);
    Prediction { e_uc, e_el }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quiet() -> RegressionCoeffs {
        RegressionCoeffs {
            noise: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn linear_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = predict_linear(1.0, 0.0, &quiet(), &mut rng);
        assert!((p.e_uc - 0.08).abs() < 1e-12);
        assert_eq!(p.e_el, 100.0);
        let p = predict_linear(0.0, 100.0, &quiet(), &mut rng);
        assert!((p.e_el - 97.0).abs() < 1e-12);
    }

    #[test]
    fn poly_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(predict_poly(0.0, 0.0, &quiet(), &mut rng).e_uc, 0.0);
        let p = predict_poly(10.0, 10.0, &quiet(), &mut rng);
        assert!((p.e_uc - 0.31).abs() < 1e-12);
        assert!((p.e_el - 99.996).abs() < 1e-12);
    }

    #[test]
    fn noise_is_seeded() {
        let c = RegressionCoeffs::default();
        let a = predict_linear(1.0, 5.0, &c, &mut ChaCha8Rng::seed_from_u64(3));
        let b = predict_linear(1.0, 5.0, &c, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_ne!(a.e_uc, 0.08);
    }
}
