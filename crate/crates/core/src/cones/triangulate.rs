use crate::error::{Error, Result};
use crate::field::dot;
use crate::geometry::cone::norm;
use crate::geometry::hrep::{cone_facets, side};
use crate::geometry::PolyhedralCone;
use crate::linalg::{det, rank};

/// Splits a pointed cone into simplicial cones with disjoint interiors
/// (pulling triangulation from the first extreme ray).
///
/// Lower-dimensional cones have measure zero and yield no pieces.
pub fn triangulate(c: &PolyhedralCone) -> Result<Vec<PolyhedralCone>> {
    let n = c.dim();
    if c.rays().is_empty() || c.span_dim() < n {
        return Ok(Vec::new());
    }
    if let Some(lineality) = c.lineality() {
        return Err(Error::NotPointed { lineality });
    }
    let rays = extreme_rays(c.rays(), n);
    let mut pieces = Vec::new();
    pull(&rays, n, n, &mut pieces);
    pieces
        .into_iter()
        .filter(|p: &Vec<Vec<f64>>| {
            let scale: f64 = p.iter().map(|r| norm(r)).product();
            det(p).abs() > 1e-12 * scale
        })
        .map(|p| PolyhedralCone::new(n, p))
        .collect()
}

/// Drops repeated directions and rays that are not extreme.
fn extreme_rays(rays: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut unit: Vec<Vec<f64>> = Vec::new();
    for r in rays {
        let l = norm(r);
        let u: Vec<f64> = r.iter().map(|c| c / l).collect();
        if !unit.iter().any(|w| w.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-12)) {
            unit.push(u);
        }
    }
    let cf = cone_facets(&unit, n);
    unit.iter()
        .filter(|r| {
            let active: Vec<Vec<f64>> = cf
                .facets
                .iter()
                .filter(|h| side(h.as_slice(), r.as_slice()) == std::cmp::Ordering::Equal)
                .cloned()
                .collect();
            rank(&active, n) >= n - 1
        })
        .cloned()
        .collect()
}

fn pull(rays: &[Vec<f64>], span: usize, n: usize, out: &mut Vec<Vec<Vec<f64>>>) {
    if rays.len() <= span {
        if rays.len() == span {
            out.push(rays.to_vec());
        }
        return;
    }
    let apex = &rays[0];
    let cf = cone_facets(rays, n);
    for h in &cf.facets {
        if dot(h, apex) <= 1e-12 * norm(h) * norm(apex) {
            continue;
        }
        let face: Vec<Vec<f64>> = rays
            .iter()
            .filter(|r| side(h.as_slice(), r.as_slice()) == std::cmp::Ordering::Equal)
            .cloned()
            .collect();
        let mut sub = Vec::new();
        pull(&face, span - 1, n, &mut sub);
        for mut piece in sub {
            piece.push(apex.clone());
            out.push(piece);
        }
    }
}
