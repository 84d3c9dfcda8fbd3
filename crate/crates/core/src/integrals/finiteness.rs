use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::normal_fan;
use crate::integrals::lp::{lp_solve, LinearProgram};
use crate::integrals::weight::WeightSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Finite,
    Divergent,
    Marginal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinitenessVerdict {
    pub status: Status,
    /// Max of `E_α` on the faces `ξ_j = −1, ξ_j = +1` for `j = 0..n`, in that order.
    pub face_maxima: Vec<f64>,
    pub max: f64,
    pub margin: f64,
    /// For `Divergent` and `Marginal`, a point of the box boundary attaining the max.
    pub witness: Option<Vec<f64>>,
}

impl FinitenessVerdict {
    pub fn is_finite(&self) -> bool {
        self.status == Status::Finite
    }
}

/// Decides integrability of `|z^α|² e^{−ψ}` from the sign of `E_α` on the
/// boundary of the unit box.
pub fn finiteness_lp(w: &WeightSpec, alpha: &[i64]) -> Result<FinitenessVerdict> {
    w.check_alpha(alpha)?;
    let n = w.dim();
    let alpha_norm = alpha.iter().map(|&a| (a as f64).powi(2)).sum::<f64>().sqrt();
    let margin = 1e-9 * (1.0 + alpha_norm + w.m as f64 * w.s.max_vertex_norm());

    let mut face_maxima = Vec::with_capacity(2 * n);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for j in 0..n {
        for (k, side) in [-1.0, 1.0].into_iter().enumerate() {
            let face = 2 * j + k;
            let (opt, xi) = face_max(w, alpha, j, side).map_err(|e| match e {
                Error::Lp(reason) => Error::LpFace { face, reason },
                other => other,
            })?;
            face_maxima.push(opt);
            if best.as_ref().map_or(true, |b| opt > b.0) {
                best = Some((opt, xi));
            }
        }
    }
    let (max, mut witness) = best.expect("at least one face");

    let status = if w.gamma == 0.0 {
        // E_α is linear on each normal cone, so a zero maximum is attained on
        // a whole ray inside a full-dimensional cone
        if max >= -margin {
            Status::Divergent
        } else {
            Status::Finite
        }
    } else if max >= margin {
        Status::Divergent
    } else if max <= -margin {
        Status::Finite
    } else {
        Status::Marginal
    };

    if status == Status::Divergent {
        if let Some(ray) = best_fan_ray(w, alpha)? {
            if w.exponent(alpha, &ray) > w.exponent(alpha, &witness) {
                witness = ray;
            }
        }
    }
    Ok(FinitenessVerdict {
        status,
        face_maxima,
        max,
        margin,
        witness: (status != Status::Finite).then_some(witness),
    })
}

/// Variables `(ξ_1..ξ_n, u, w)`; maximize `2<α+𝟙,ξ> − 2m·u − 2γ·w`.
fn face_max(w: &WeightSpec, alpha: &[i64], j: usize, side: f64) -> Result<(f64, Vec<f64>)> {
    let n = w.dim();
    let (u, wv) = (n, n + 1);
    let mut lp = LinearProgram::new(n + 2);
    for (i, &a) in alpha.iter().enumerate() {
        lp.objective[i] = 2.0 * (a as f64 + 1.0);
        if i == j {
            lp.bound(i, Some(side), Some(side));
        } else {
            lp.bound(i, Some(-1.0), Some(1.0));
        }
    }
    lp.objective[u] = -2.0 * w.m as f64;
    lp.objective[wv] = -2.0 * w.gamma;
    lp.bound(wv, Some(0.0), None);
    for s in w.s.vertices() {
        let mut row = s.clone();
        row.push(-1.0);
        row.push(0.0);
        lp.le(row, 0.0);
    }
    for i in 0..n {
        let mut row = vec![0.0; n + 2];
        row[i] = 1.0;
        row[wv] = -1.0;
        lp.le(row, 0.0);
    }
    let sol = lp_solve(&lp)?;
    Ok((sol.optimum, sol.argmax[..n].to_vec()))
}

/// Fan ray (scaled to `‖·‖∞ = 1`) with the largest exponent.
fn best_fan_ray(w: &WeightSpec, alpha: &[i64]) -> Result<Option<Vec<f64>>> {
    let fan = normal_fan(&w.s)?;
    Ok(fan
        .cells()
        .iter()
        .flat_map(|c| c.cone.rays().iter())
        .map(|r| {
            let l = r.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            r.iter().map(|v| v / l).collect::<Vec<f64>>()
        })
        .max_by(|a, b| w.exponent(alpha, a).total_cmp(&w.exponent(alpha, b))))
}
