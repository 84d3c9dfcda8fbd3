use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::PolyhedralCone;

/// `{ξ : angle(𝟙, ξ) <= half_angle}`, stored as an angle so that the
/// non-convex cones with `half_angle > π/2` are represented faithfully.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AngularCone {
    pub dim: usize,
    /// Radians in `(0, π]`.
    pub half_angle: f64,
}

impl AngularCone {
    pub fn new(dim: usize, half_angle: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("cone dimension must be positive".into()));
        }
        if !(half_angle > 0.0 && half_angle <= PI + 1e-15) {
            return Err(Error::InvalidArgument(format!(
                "half angle must lie in (0, π], got {half_angle}"
            )));
        }
        Ok(Self {
            dim,
            half_angle: half_angle.min(PI),
        })
    }

    /// Half-space cone `{<𝟙, ξ> >= 0}`.
    pub fn half_space(dim: usize) -> Self {
        Self {
            dim,
            half_angle: PI / 2.0,
        }
    }

    /// `cos(θ)·√n`, the threshold in `<𝟙, ξ> >= cos(θ)·√n·|ξ|`.
    pub fn threshold(&self) -> f64 {
        self.half_angle.cos() * (self.dim as f64).sqrt()
    }

    pub fn contains(&self, xi: &[f64]) -> bool {
        self.contains_tol(xi, 1e-12)
    }

    pub fn contains_tol(&self, xi: &[f64], tol: f64) -> bool {
        let norm = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return true;
        }
        let s: f64 = xi.iter().sum();
        s >= self.threshold() * norm - tol * norm
    }

    /// Angle between `𝟙` and `xi` (0 for `xi = 0`).
    pub fn angle_to_axis(&self, xi: &[f64]) -> f64 {
        let norm = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let c = xi.iter().sum::<f64>() / (norm * (self.dim as f64).sqrt());
        c.clamp(-1.0, 1.0).acos()
    }
}

/// Γ with half-angle `arccos(-(d_m - γ)/√n)`.
pub fn theorem_cone(n: usize, d_m: f64, gamma: f64) -> Result<AngularCone> {
    if !(gamma >= 0.0) || !(d_m > 0.0) || gamma >= d_m {
        return Err(Error::HypothesisViolated { gamma, d_m });
    }
    let c = -(d_m - gamma) / (n as f64).sqrt();
    if c < -1.0 - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "(d_m - gamma)/sqrt(n) = {} exceeds 1; no such angle",
            -c
        )));
    }
    AngularCone::new(n, c.max(-1.0).acos())
}

/// Either cone flavour accepted by the hull routines.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Cone {
    Angular(AngularCone),
    Polyhedral(PolyhedralCone),
}

impl Cone {
    pub fn dim(&self) -> usize {
        match self {
            Cone::Angular(a) => a.dim,
            Cone::Polyhedral(p) => p.dim(),
        }
    }

    pub fn contains(&self, xi: &[f64]) -> bool {
        match self {
            Cone::Angular(a) => a.contains(xi),
            Cone::Polyhedral(p) => p.contains(xi, 1e-12),
        }
    }
}

impl From<AngularCone> for Cone {
    fn from(c: AngularCone) -> Self {
        Cone::Angular(c)
    }
}

impl From<PolyhedralCone> for Cone {
    fn from(c: PolyhedralCone) -> Self {
        Cone::Polyhedral(c)
    }
}
