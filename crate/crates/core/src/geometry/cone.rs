use crate::error::{check_dim, Error, Result};
use crate::field::{dot, Scalar};
use crate::geometry::hrep::cone_facets;

/// Convex cone `{Σ λ_i r_i : λ_i >= 0}`, optionally with its dual description
/// `{ξ : <h, ξ> >= 0 for every inward normal h}`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PolyhedralCone {
    dim: usize,
    rays: Vec<Vec<f64>>,
    normals: Option<Vec<Vec<f64>>>,
}

impl PolyhedralCone {
    pub fn new(dim: usize, rays: Vec<Vec<f64>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            check_dim(dim, r.len())?;
            if r.iter().all(|&c| c == 0.0) {
                return Err(Error::InvalidArgument(format!("ray {i} is zero")));
            }
        }
        Ok(Self {
            dim,
            rays,
            normals: None,
        })
    }

    pub fn with_normals(mut self, normals: Vec<Vec<f64>>) -> Result<Self> {
        for h in &normals {
            check_dim(self.dim, h.len())?;
        }
        self.normals = Some(normals);
        Ok(self)
    }

    /// `ℝⁿ₊`.
    pub fn orthant(dim: usize) -> Self {
        let rays = (0..dim)
            .map(|j| {
                let mut e = vec![0.0; dim];
                e[j] = 1.0;
                e
            })
            .collect::<Vec<_>>();
        Self {
            dim,
            normals: Some(rays.clone()),
            rays,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<f64>] {
        &self.rays
    }

    pub fn normals(&self) -> Option<&[Vec<f64>]> {
        self.normals.as_deref()
    }

    /// Membership through the dual description when present, else through the
    /// facets computed from the rays.
    pub fn contains(&self, xi: &[f64], tol: f64) -> bool {
        let scale = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
        match &self.normals {
            Some(hs) => hs.iter().all(|h| dot(h, xi) >= -tol * scale * norm(h)),
            None => {
                let cf = cone_facets(&self.rays, self.dim);
                cf.equalities
                    .iter()
                    .all(|e| dot(e, xi).abs() <= tol * scale * norm(e))
                    && cf
                        .facets
                        .iter()
                        .all(|h| dot(h, xi) >= -tol * scale * norm(h))
            }
        }
    }

    /// Linear span dimension of the rays.
    pub fn span_dim(&self) -> usize {
        crate::linalg::rank(&self.rays, self.dim)
    }

    /// A nonzero direction `d` with both `d` and `-d` in the cone, if any.
    pub fn lineality(&self) -> Option<Vec<f64>> {
        // pointed iff some c has <c, r> > 0 for every ray
        let cf = cone_facets(&self.rays, self.dim);
        if self.rays.is_empty() {
            return None;
        }
        let mut lp = crate::integrals::lp::LinearProgram::new(self.dim + 1);
        // maximize t subject to <c, r_i> >= t, |c_j| <= 1
        lp.objective[self.dim] = 1.0;
        for j in 0..self.dim {
            lp.bound(j, Some(-1.0), Some(1.0));
        }
        lp.bound(self.dim, None, Some(1.0));
        for r in &self.rays {
            let mut row: Vec<f64> = r.iter().map(|v| -v).collect();
            row.push(1.0);
            lp.le(row, 0.0);
        }
        let pointed = crate::integrals::lp::lp_solve(&lp)
            .map(|s| s.optimum > 1e-9)
            .unwrap_or(false);
        if pointed {
            return None;
        }
        // a direction in the span orthogonal to every facet normal lies in the lineality space
        let mut rows = cf.facets.clone();
        rows.extend(cf.equalities.iter().cloned());
        let ns = crate::linalg::nullspace(&rows, self.dim);
        ns.into_iter().next().or_else(|| self.rays.first().cloned())
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn f64_vec<T: Scalar>(v: &[T]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_membership() {
        let c = PolyhedralCone::orthant(2);
        assert!(c.contains(&[1.0, 2.0], 1e-12));
        assert!(c.contains(&[0.0, 0.0], 1e-12));
        assert!(!c.contains(&[1.0, -0.1], 1e-12));
        let c2 = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(c2.contains(&[1.0, 2.0], 1e-12));
        assert!(!c2.contains(&[-1.0, 2.0], 1e-12));
    }

    #[test]
    fn lineality_detection() {
        assert!(PolyhedralCone::orthant(3).lineality().is_none());
        let half = PolyhedralCone::new(
            2,
            vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let d = half.lineality().unwrap();
        assert!(d[1].abs() < 1e-12 && d[0].abs() > 0.5);
    }

    #[test]
    fn rejects_zero_ray() {
        assert!(PolyhedralCone::new(2, vec![vec![0.0, 0.0]]).is_err());
    }
}
