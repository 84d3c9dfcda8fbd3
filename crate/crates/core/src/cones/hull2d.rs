//! Exact planar Γ-hulls as explicit polygons.

use std::f64::consts::PI;

use crate::cones::angular::Cone;
use crate::cones::hull::active_arcs;
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::integrals::lp::{lp_solve, LinearProgram};

/// Arcs wider than this are split before taking endpoint half-planes.
const ARC_SPLIT: f64 = PI - 1e-9;

/// `Ŝ_Γ` for a given source polytope and cone.
#[derive(Debug, Clone)]
pub struct HullRegion {
    pub source: Polytope,
    pub cone: Cone,
    /// Counter-clockwise vertices (planar case only).
    pub polygon: Option<Vec<Vec<f64>>>,
    /// The half-planes `a·x <= b` whose intersection is the hull.
    pub half_planes: Vec<([f64; 2], f64)>,
}

impl HullRegion {
    /// Containment in the explicit polygon, with absolute tolerance `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.half_planes
            .iter()
            .all(|(a, b)| a[0] * x[0] + a[1] * x[1] <= b + tol)
    }

    pub fn bbox_max(&self) -> Vec<f64> {
        let poly = self.polygon.as_deref().unwrap_or(&[]);
        (0..2)
            .map(|j| poly.iter().map(|p| p[j]).fold(0.0, f64::max))
            .collect()
    }
}

/// Intersects the endpoint half-planes of every active arc with `ℝ²₊`.
pub fn hull_polygon_2d(s: &Polytope, cone: &Cone) -> Result<HullRegion> {
    if s.dim() != 2 || cone.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: s.dim(),
        });
    }
    let mut planes: Vec<([f64; 2], f64)> = vec![([-1.0, 0.0], 0.0), ([0.0, -1.0], 0.0)];
    let mut push = |t: f64, v: &[f64]| {
        let a = [t.cos(), t.sin()];
        let b = a[0] * v[0] + a[1] * v[1];
        let dup = planes
            .iter()
            .any(|(p, q)| (p[0] - a[0]).abs() < 1e-13 && (p[1] - a[1]).abs() < 1e-13 && (q - b).abs() < 1e-13);
        if !dup {
            planes.push((a, b));
        }
    };
    for (u, v, vi) in active_arcs(s, cone)? {
        let vert = &s.vertices()[vi];
        let pieces = ((v - u) / ARC_SPLIT).ceil().max(1.0) as usize;
        for i in 0..=pieces {
            push(u + (v - u) * i as f64 / pieces as f64, vert);
        }
    }

    // boundedness: x ≥ 0 and bounded x1 + x2
    let mut lp = LinearProgram::new(2);
    lp.objective = vec![1.0, 1.0];
    lp.bound(0, Some(0.0), None).bound(1, Some(0.0), None);
    for (a, b) in &planes {
        lp.le(a.to_vec(), *b);
    }
    lp_solve(&lp).map_err(|e| Error::UnboundedHull(format!("{e}; Γ needs a direction with both components positive")))?;

    let scale = 1.0 + s.max_vertex_norm();
    let feasible = |p: &[f64; 2]| {
        planes
            .iter()
            .all(|(a, b)| a[0] * p[0] + a[1] * p[1] <= b + 1e-9 * scale)
    };
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            let (a, b) = planes[i];
            let (c, d) = planes[j];
            let det = a[0] * c[1] - a[1] * c[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let p = [(b * c[1] - a[1] * d) / det, (a[0] * d - b * c[0]) / det];
            if feasible(&p) && !pts.iter().any(|q| (q[0] - p[0]).hypot(q[1] - p[1]) < 1e-9 * scale) {
                pts.push(p);
            }
        }
    }
    let polygon = convex_hull_ccw(pts)
        .into_iter()
        .map(|p| p.to_vec())
        .collect();
    Ok(HullRegion {
        source: s.clone(),
        cone: cone.clone(),
        polygon: Some(polygon),
        half_planes: planes,
    })
}

/// Andrew's monotone chain, counter-clockwise, collinear points dropped.
pub fn convex_hull_ccw(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-14 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-14 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::angular::{theorem_cone, AngularCone};
    use crate::cones::hull::{hull_membership, HullMembership, Resolution};
    use crate::field::parse_rational;
    use crate::geometry::shapes::*;
    use crate::geometry::{lattice_gap, project_to_polytope, Arith, PolyhedralCone};
    use rand::{Rng, SeedableRng};

    fn quad() -> Polytope {
        let q = |s: &str| parse_rational(s).unwrap();
        quadrilateral(&q("0.1"), &q("0.8")).unwrap()
    }

    fn same_polygon(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
        a.len() == b.len()
            && a.iter().all(|p| b.iter().any(|q| (p[0] - q[0]).hypot(p[1] - q[1]) < 1e-9))
    }

    #[test]
    fn lower_sets_are_their_own_hull() {
        let quarter = Cone::Polyhedral(PolyhedralCone::orthant(2));
        for s in [unit_square(), standard_simplex(2)] {
            let h = hull_polygon_2d(&s, &quarter).unwrap();
            assert!(same_polygon(h.polygon.as_ref().unwrap(), s.vertices()));
        }
        // the quarter plane is also the angular cone of half-angle π/4
        let angular = Cone::Angular(AngularCone::new(2, PI / 4.0).unwrap());
        let h = hull_polygon_2d(&unit_square(), &angular).unwrap();
        assert!(same_polygon(h.polygon.as_ref().unwrap(), unit_square().vertices()));
    }

    #[test]
    fn quadrilateral_hull_grows() {
        let s = quad();
        let d4 = lattice_gap(&s, 4, Arith::Auto).unwrap().distance;
        let cone = Cone::Angular(theorem_cone(2, d4, 0.0).unwrap());
        let h = hull_polygon_2d(&s, &cone).unwrap();
        assert!(h.contains(&[0.25, 0.0], 1e-12));
        for v in s.vertices() {
            assert!(h.contains(v, 1e-12));
        }
        let poly = h.polygon.as_ref().unwrap();
        let far = poly
            .iter()
            .map(|p| project_to_polytope(&s, p).unwrap().distance)
            .fold(0.0, f64::max);
        assert!(far > 1e-3);
        for p in poly {
            let m = hull_membership(&s, &cone, p, Arith::Auto, Resolution::default()).unwrap();
            assert!(!m.is_outside(), "{p:?} -> {m:?}");
        }
    }

    #[test]
    fn polygon_and_membership_agree() {
        let s = quad();
        let cone = Cone::Angular(theorem_cone(2, 0.6, 0.2).unwrap());
        let h = hull_polygon_2d(&s, &cone).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let x = [rng.gen_range(0.0..1.5), rng.gen_range(0.0..1.5)];
            match hull_membership(&s, &cone, &x, Arith::Float, Resolution::default()).unwrap() {
                HullMembership::Inside => assert!(h.contains(&x, 1e-9)),
                HullMembership::Outside => assert!(!h.contains(&x, -1e-9)),
                HullMembership::Boundary(_) => {}
            }
        }
    }

    #[test]
    fn rejects_non_planar() {
        let c = Cone::Polyhedral(PolyhedralCone::orthant(3));
        assert!(hull_polygon_2d(&standard_simplex(3), &c).is_err());
    }

    #[test]
    fn unbounded_hull_reported() {
        // Γ = a single ray along -e1 leaves x2 unconstrained
        let c = Cone::Polyhedral(PolyhedralCone::new(2, vec![vec![-1.0, 0.0]]).unwrap());
        assert!(matches!(
            hull_polygon_2d(&unit_square(), &c),
            Err(Error::UnboundedHull(_))
        ));
    }
}
