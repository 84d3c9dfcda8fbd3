use crate::error::{check_dim, Error, Result};
use crate::geometry::Polytope;

/// `(S, m, γ)`: the weight `ψ = 2m·H_S + γ·log(1 + |z|²)`.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    pub s: Polytope,
    pub m: u64,
    pub gamma: f64,
}

/// How the `γ` term enters the log-coordinate exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaTerm {
    /// `γ·log(1 + Σ e^{2ξ_j})`, the weight itself.
    #[default]
    ExactLog,
    /// `2γ·max(0, ξ_1, …, ξ_n)`, the homogeneous comparison weight.
    MaxComparison,
}

impl WeightSpec {
    pub fn new(s: Polytope, m: u64, gamma: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be positive".into()));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidArgument(format!("gamma must be >= 0, got {gamma}")));
        }
        Ok(Self { s, m, gamma })
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn check_alpha(&self, alpha: &[i64]) -> Result<()> {
        check_dim(self.dim(), alpha.len())?;
        if alpha.iter().any(|&a| a < 0) {
            return Err(Error::InvalidArgument(format!("multi-index {alpha:?} has a negative entry")));
        }
        Ok(())
    }

    /// `E_α(ξ) = 2<α+𝟙, ξ> − 2m·φ_S(ξ) − 2γ·max(0, ξ_1, …, ξ_n)`.
    pub fn exponent(&self, alpha: &[i64], xi: &[f64]) -> f64 {
        self.exponent_with(alpha, xi, GammaTerm::MaxComparison)
    }

    pub fn exponent_with(&self, alpha: &[i64], xi: &[f64], term: GammaTerm) -> f64 {
        let lin: f64 = alpha
            .iter()
            .zip(xi)
            .map(|(&a, &x)| (a as f64 + 1.0) * x)
            .sum();
        let base = 2.0 * lin - 2.0 * self.m as f64 * self.s.support_unchecked(xi);
        if self.gamma == 0.0 {
            return base;
        }
        base - match term {
            GammaTerm::MaxComparison => 2.0 * self.gamma * xi.iter().fold(0.0f64, |a, &b| a.max(b)),
            GammaTerm::ExactLog => self.gamma * log1p_sum_exp2(xi),
        }
    }

    /// `χ(ξ) = γ·max(0, ξ_1, …, ξ_n) + m·φ_S(ξ)`.
    pub fn chi(&self, xi: &[f64]) -> f64 {
        self.gamma * xi.iter().fold(0.0f64, |a, &b| a.max(b))
            + self.m as f64 * self.s.support_unchecked(xi)
    }
}

/// `log(1 + Σ e^{2ξ_j})` without overflow.
pub(crate) fn log1p_sum_exp2(xi: &[f64]) -> f64 {
    let top = xi.iter().fold(0.0f64, |a, &b| a.max(2.0 * b));
    let sum: f64 = (-top).exp() + xi.iter().map(|&x| (2.0 * x - top).exp()).sum::<f64>();
    top + sum.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn exponent_is_concave_and_homogeneous() {
        let w = WeightSpec::new(unit_square(), 3, 0.4).unwrap();
        let alpha = [1, 2];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let x = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let y = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let mid = [(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0];
            let e = |v: &[f64]| w.exponent(&alpha, v);
            assert!(e(&mid) >= (e(&x) + e(&y)) / 2.0 - 1e-12);
            let t = rng.gen_range(0.0..5.0);
            assert!((e(&[t * x[0], t * x[1]]) - t * e(&x)).abs() < 1e-10 * (1.0 + t));
        }
    }

    #[test]
    fn exact_log_within_bounded_gap() {
        let w = WeightSpec::new(standard_simplex(2), 2, 0.7).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let x = [rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)];
            let gap = w.exponent_with(&[0, 1], &x, GammaTerm::MaxComparison)
                - w.exponent_with(&[0, 1], &x, GammaTerm::ExactLog);
            assert!(gap >= -1e-9 && gap <= 0.7 * 3f64.ln() + 1e-9, "{gap}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WeightSpec::new(unit_square(), 0, 0.0).is_err());
        assert!(WeightSpec::new(unit_square(), 1, -0.5).is_err());
        let w = WeightSpec::new(unit_square(), 1, 0.0).unwrap();
        assert!(w.check_alpha(&[1]).is_err());
        assert!(w.check_alpha(&[1, -1]).is_err());
    }
}
