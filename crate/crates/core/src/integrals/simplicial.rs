use crate::error::{check_dim, Error, Result};
use crate::field::dot;
use crate::geometry::cone::norm;
use crate::geometry::PolyhedralCone;
use crate::linalg::det;

/// `∫_C e^{<c, ξ>} dξ` over a simplicial cone `C = cone(v_1, …, v_n)`:
/// `|det V| / Π(−<c, v_i>)` when every `<c, v_i> < 0`, otherwise `+∞`.
pub fn simplicial_exp_integral(cone: &PolyhedralCone, c: &[f64]) -> Result<f64> {
    let n = cone.dim();
    check_dim(n, c.len())?;
    let rays = cone.rays();
    if rays.len() != n {
        return Err(Error::InvalidArgument(format!(
            "simplicial cone needs {n} rays, got {}",
            rays.len()
        )));
    }
    let d = det(rays);
    let scale: f64 = rays.iter().map(|r| norm(r)).product();
    if d.abs() <= 1e-12 * scale {
        return Err(Error::SingularRays);
    }
    let cn = norm(c);
    let mut denom = 1.0;
    for r in rays {
        let v = dot(c, r);
        if v >= -1e-12 * cn * norm(r) {
            return Ok(f64::INFINITY);
        }
        denom *= -v;
    }
    Ok(d.abs() / denom)
}

/// First ray with `<c, v> >= 0`, certifying divergence.
pub fn divergent_ray(cone: &PolyhedralCone, c: &[f64]) -> Option<Vec<f64>> {
    let cn = norm(c);
    cone.rays()
        .iter()
        .find(|r| dot(c, r) >= -1e-12 * cn * norm(r))
        .cloned()
}
