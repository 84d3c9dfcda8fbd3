//! Euclidean projection onto a vertex-listed polytope (Wolfe's nearest-point
//! algorithm on the translated vertex set).

use crate::error::{check_dim, Error, Result};
use crate::field::dot;
use crate::geometry::Polytope;
use crate::linalg::solve;

const Z_MAJOR: f64 = 1e-12;
const Z_WEIGHT: f64 = 1e-12;
/// Absolute tolerance on the certificate `<x - p, s - p> <= tol`.
pub const CERT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub point: Vec<f64>,
    pub distance: f64,
}

pub fn project_to_polytope(s: &Polytope, x: &[f64]) -> Result<Projection> {
    check_dim(s.dim(), x.len())?;
    let pts: Vec<Vec<f64>> = s
        .vertices()
        .iter()
        .map(|v| v.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    let cap = 10 * pts.len() * pts.len();
    let start = (0..pts.len())
        .min_by(|&i, &j| dot(&pts[i], &pts[i]).total_cmp(&dot(&pts[j], &pts[j])))
        .expect("nonempty");

    let mut best = wolfe(&pts, start, cap);
    if !certified(&pts, &best.1, x) {
        // restart from the vertex that best improves the current iterate
        let restart = (0..pts.len())
            .min_by(|&i, &j| dot(&best.1, &pts[i]).total_cmp(&dot(&best.1, &pts[j])))
            .expect("nonempty");
        let second = wolfe(&pts, restart, cap);
        if dot(&second.1, &second.1) <= dot(&best.1, &best.1) {
            best = second;
        }
    }
    let w = best.1;
    let point: Vec<f64> = w.iter().zip(x).map(|(a, b)| a + b).collect();
    if !certified(&pts, &w, x) {
        return Err(Error::NoConvergence {
            iterations: best.0,
            residual: residual(&pts, &w),
            best: point,
        });
    }
    Ok(Projection {
        distance: dot(&w, &w).sqrt(),
        point,
    })
}

fn residual(pts: &[Vec<f64>], w: &[f64]) -> f64 {
    // <x - p, s - p> = <-w, q_s - w>
    pts.iter()
        .map(|q| dot(w, w) - dot(w, q))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn certified(pts: &[Vec<f64>], w: &[f64], x: &[f64]) -> bool {
    let scale = 1.0 + x.iter().map(|c| c * c).sum::<f64>().sqrt();
    residual(pts, w) <= CERT_TOL * scale
}

/// Returns (major iterations, nearest point of conv(pts) to the origin).
fn wolfe(pts: &[Vec<f64>], start: usize, cap: usize) -> (usize, Vec<f64>) {
    let dim = pts[0].len();
    let scale = pts.iter().map(|q| dot(q, q)).fold(0.0, f64::max).max(1e-300);
    let combine = |idx: &[usize], lam: &[f64]| {
        let mut w = vec![0.0; dim];
        for (&i, &l) in idx.iter().zip(lam) {
            for k in 0..dim {
                w[k] += l * pts[i][k];
            }
        }
        w
    };
    let mut corral = vec![start];
    let mut lam = vec![1.0];
    let mut w = pts[start].clone();
    let mut iterations = 0;
    while iterations < cap.max(1) {
        iterations += 1;
        let ww = dot(&w, &w);
        let j = (0..pts.len())
            .min_by(|&a, &b| dot(&w, &pts[a]).total_cmp(&dot(&w, &pts[b])))
            .expect("nonempty");
        if ww - dot(&w, &pts[j]) <= Z_MAJOR * scale || corral.contains(&j) {
            break;
        }
        corral.push(j);
        lam.push(0.0);
        loop {
            let Some(mu) = affine_minimizer(pts, &corral) else {
                // affinely dependent corral; keep the current iterate
                corral.pop();
                lam.pop();
                return (iterations, w);
            };
            if mu.iter().all(|&m| m > Z_WEIGHT) {
                lam = mu;
                break;
            }
            let mut theta = 1.0;
            for (l, m) in lam.iter().zip(&mu) {
                if *m <= Z_WEIGHT && l - m > 0.0 {
                    theta = f64::min(theta, l / (l - m));
                }
            }
            for (l, m) in lam.iter_mut().zip(&mu) {
                *l += theta * (m - *l);
            }
            let mut k = 0;
            while k < corral.len() {
                if lam[k] <= Z_WEIGHT {
                    corral.remove(k);
                    lam.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = lam.iter().sum();
            lam.iter_mut().for_each(|l| *l /= total);
            if corral.len() == 1 {
                break;
            }
        }
        w = combine(&corral, &lam);
    }
    (iterations, w)
}

/// Weights of the point of minimum norm in the affine hull of the corral.
fn affine_minimizer(pts: &[Vec<f64>], corral: &[usize]) -> Option<Vec<f64>> {
    let k = corral.len();
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for (r, &i) in corral.iter().enumerate() {
        for (c, &j) in corral.iter().enumerate() {
            a[r][c] = dot(&pts[i], &pts[j]);
        }
        a[r][k] = 1.0;
        a[k][r] = 1.0;
    }
    let mut rhs = vec![0.0; k + 1];
    rhs[k] = 1.0;
    let sol = solve(&a, &rhs)?;
    Some(sol[..k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polytope::shapes::*;

    #[test]
    fn projects_onto_square_edge() {
        let p = project_to_polytope(&unit_square(), &[2.0, 0.5]).unwrap();
        assert!((p.distance - 1.0).abs() < 1e-12);
        assert!((p.point[0] - 1.0).abs() < 1e-12 && (p.point[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn inside_point_has_zero_distance() {
        let p = project_to_polytope(&unit_square(), &[0.3, 0.6]).unwrap();
        assert!(p.distance < 1e-9);
    }

    #[test]
    fn projects_onto_vertex_and_simplex_face() {
        let p = project_to_polytope(&unit_square(), &[3.0, 5.0]).unwrap();
        assert!((p.distance - (4.0f64 + 16.0).sqrt()).abs() < 1e-12);
        let t = standard_simplex(3);
        let p = project_to_polytope(&t, &[1.0, 1.0, 1.0]).unwrap();
        for c in &p.point {
            assert!((c - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_checked() {
        assert!(project_to_polytope(&unit_square(), &[1.0]).is_err());
    }
}
