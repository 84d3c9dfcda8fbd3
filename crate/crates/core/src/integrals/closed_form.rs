use std::f64::consts::PI;

use serde::Serialize;

use crate::cones::triangulate;
use crate::error::{Error, Result};
use crate::field::dot;
use crate::geometry::{normal_fan, PolyhedralCone};
use crate::integrals::simplicial::{divergent_ray, simplicial_exp_integral};
use crate::integrals::weight::WeightSpec;

/// Contribution of one normal cone `N_s`, without the `(2π)ⁿ` factor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellIntegral {
    pub vertex: usize,
    pub vertex_coords: Vec<f64>,
    pub value: f64,
    pub pieces: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceWitness {
    pub vertex: usize,
    /// A direction in `N_s` along which the exponent is `>= 0`.
    pub direction: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedForm {
    /// `(2π)ⁿ · Σ cells`; `+∞` when some cell diverges.
    pub value: f64,
    pub cells: Vec<CellIntegral>,
    pub witness: Option<DivergenceWitness>,
}

/// Squared weighted norm of `z^α` for `γ = 0`, summed over the normal fan.
///
/// On `N_s` the exponent is linear, `E_α(ξ) = <2(α + 𝟙 − m·s), ξ>`, so each
/// triangulated piece has a closed form. Evaluation stops at the first
/// divergent cell.
pub fn monomial_norm_closed_form(w: &WeightSpec, alpha: &[i64]) -> Result<ClosedForm> {
    w.check_alpha(alpha)?;
    if w.gamma != 0.0 {
        return Err(Error::InvalidArgument(format!(
            "closed form requires gamma = 0, got {}",
            w.gamma
        )));
    }
    let n = w.dim();
    let fan = normal_fan(&w.s)?;
    let mut cells = Vec::with_capacity(fan.cells().len());
    let mut sum = 0.0;
    for cell in fan.cells() {
        let s = &w.s.vertices()[cell.vertex];
        let c = cell_coefficients(alpha, w.m, s);
        let (value, pieces, witness) = cell_integral(&cell.cone, &c)?;
        cells.push(CellIntegral {
            vertex: cell.vertex,
            vertex_coords: s.clone(),
            value,
            pieces,
        });
        if let Some(direction) = witness {
            return Ok(ClosedForm {
                value: f64::INFINITY,
                cells,
                witness: Some(DivergenceWitness {
                    vertex: cell.vertex,
                    direction,
                }),
            });
        }
        sum += value;
    }
    Ok(ClosedForm {
        value: (2.0 * PI).powi(n as i32) * sum,
        cells,
        witness: None,
    })
}

/// `c = 2(α + 𝟙 − m·s)`.
pub fn cell_coefficients(alpha: &[i64], m: u64, s: &[f64]) -> Vec<f64> {
    alpha
        .iter()
        .zip(s)
        .map(|(&a, &sj)| 2.0 * (a as f64 + 1.0 - m as f64 * sj))
        .collect()
}

/// `∫_C e^{<c, ξ>} dξ` over a full cone; returns (value, pieces, witness).
pub fn cell_integral(cone: &PolyhedralCone, c: &[f64]) -> Result<(f64, usize, Option<Vec<f64>>)> {
    let pieces = match triangulate(cone) {
        Ok(p) => p,
        Err(Error::NotPointed { lineality }) => {
            let dir = if dot(c, &lineality) >= 0.0 {
                lineality
            } else {
                lineality.iter().map(|v| -v).collect()
            };
            return Ok((f64::INFINITY, 0, Some(dir)));
        }
        Err(e) => return Err(e),
    };
    let mut total = 0.0;
    for p in &pieces {
        let v = simplicial_exp_integral(p, c)?;
        if v.is_infinite() {
            let ray = divergent_ray(p, c).expect("divergent piece has a ray");
            return Ok((f64::INFINITY, pieces.len(), Some(ray)));
        }
        total += v;
    }
    Ok((total, pieces.len(), None))
}
