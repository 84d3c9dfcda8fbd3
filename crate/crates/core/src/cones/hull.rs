//! Γ-hull membership: the sign of
//! `M(x) = sup { <x, ξ> - φ_S(ξ) : ξ ∈ Γ, |ξ| = 1 }`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};

use crate::cones::angular::{AngularCone, Cone};
use crate::cones::hull2d::hull_polygon_2d;
use crate::error::{check_dim, Error, Result};
use crate::exec::{par_map, Execution};
use crate::field::dot;
use crate::geometry::fan::arc_of_cell;
use crate::geometry::{normal_fan, project_to_polytope, Arith, Polytope};
use crate::integrals::lp::{lp_solve, LinearProgram};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum HullMembership {
    Inside,
    Outside,
    /// `|M(x)|` is below the carried tolerance.
    Boundary(f64),
}

impl HullMembership {
    pub fn is_inside(self) -> bool {
        self == HullMembership::Inside
    }
    pub fn is_outside(self) -> bool {
        self == HullMembership::Outside
    }
}

/// Grid controls for `n >= 3` angular cones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    /// Subdivisions per cube-face edge on the first pass.
    pub initial_grid: usize,
    /// Refinement stops here.
    pub max_grid: usize,
    /// Widest certification band still reported as `Boundary`.
    pub boundary_tol: f64,
    pub exec: Execution,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            initial_grid: 16,
            max_grid: 128,
            boundary_tol: 1e-3,
            exec: Execution::default(),
        }
    }
}

/// Value of `M(x)` with the direction attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct HullSup {
    /// Best estimate of `M(x)` (exact up to rounding in the plane and for
    /// polyhedral cones, where it is normalised by ray weights instead of `|ξ|`).
    pub value: f64,
    /// Certified enclosure `[lower, upper]` of the sign-relevant quantity.
    pub lower: f64,
    pub upper: f64,
    pub direction: Vec<f64>,
}

/// Angular arcs `[start, end]` covered by a planar cone.
pub(crate) fn cone_arcs(cone: &Cone) -> Vec<(f64, f64)> {
    match cone {
        Cone::Angular(a) => {
            if a.half_angle >= PI - 1e-15 {
                vec![(0.0, TWO_PI)]
            } else {
                let start = (PI / 4.0 - a.half_angle).rem_euclid(TWO_PI);
                vec![(start, start + 2.0 * a.half_angle)]
            }
        }
        Cone::Polyhedral(p) => {
            if p.span_dim() == 2 {
                vec![arc_of_cell(p)]
            } else {
                p.rays()
                    .iter()
                    .map(|r| {
                        let t = r[1].atan2(r[0]).rem_euclid(TWO_PI);
                        (t, t)
                    })
                    .collect()
            }
        }
    }
}

/// Sub-arcs of the cone's directions on which one vertex maximizes `<s, ξ>`.
pub(crate) fn active_arcs(s: &Polytope, cone: &Cone) -> Result<Vec<(f64, f64, usize)>> {
    let fan = normal_fan(s)?;
    let fan_arcs: Vec<(f64, f64, usize)> = fan
        .cells()
        .iter()
        .map(|c| {
            let (a, b) = arc_of_cell(&c.cone);
            (a, b, c.vertex)
        })
        .collect();
    let mut out = Vec::new();
    for (g0, g1) in cone_arcs(cone) {
        for &(f0, f1, v) in &fan_arcs {
            for k in [-1.0, 0.0, 1.0] {
                let lo = g0.max(f0 + k * TWO_PI);
                let hi = g1.min(f1 + k * TWO_PI);
                if hi >= lo - 1e-15 {
                    out.push((lo, hi.max(lo), v));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    Ok(out)
}

/// Max of `<y, ξ(t)>` for `t ∈ [u, v]`, with the maximizing angle.
fn arc_max(y: &[f64], u: f64, v: f64) -> (f64, f64) {
    let amp = y[0].hypot(y[1]);
    if amp == 0.0 {
        return (0.0, u);
    }
    let phi = y[1].atan2(y[0]);
    let k = ((u - phi) / TWO_PI).ceil();
    let peak = phi + k * TWO_PI;
    if peak <= v {
        return (amp, peak);
    }
    let (au, av) = (amp * (u - phi).cos(), amp * (v - phi).cos());
    if au >= av {
        (au, u)
    } else {
        (av, v)
    }
}

fn sup_planar(s: &Polytope, cone: &Cone, x: &[f64]) -> Result<HullSup> {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for (u, v, vi) in active_arcs(s, cone)? {
        let sv = &s.vertices()[vi];
        let y = [x[0] - sv[0], x[1] - sv[1]];
        let (val, t) = arc_max(&y, u, v);
        if val > best.0 {
            best = (val, t);
        }
    }
    Ok(HullSup {
        value: best.0,
        lower: best.0,
        upper: best.0,
        direction: vec![best.1.cos(), best.1.sin()],
    })
}

/// Polyhedral Γ: `max t  s.t.  t <= <x - s, Σ λ_i r_i>` over the simplex of ray weights.
fn sup_polyhedral(s: &Polytope, rays: &[Vec<f64>], x: &[f64]) -> Result<HullSup> {
    let k = rays.len();
    let mut lp = LinearProgram::new(k + 1);
    lp.objective[k] = 1.0;
    for i in 0..k {
        lp.bound(i, Some(0.0), None);
    }
    let mut sum = vec![1.0; k];
    sum.push(0.0);
    lp.eq(sum, 1.0);
    for v in s.vertices() {
        let y: Vec<f64> = x.iter().zip(v).map(|(a, b)| a - b).collect();
        let mut row: Vec<f64> = rays.iter().map(|r| -dot(&y, r)).collect();
        row.push(1.0);
        lp.le(row, 0.0);
    }
    let sol = lp_solve(&lp)?;
    let dim = x.len();
    let mut dir = vec![0.0; dim];
    for (l, r) in sol.argmax[..k].iter().zip(rays) {
        for j in 0..dim {
            dir[j] += l * r[j];
        }
    }
    let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm > 0.0 {
        dir.iter_mut().for_each(|c| *c /= norm);
    }
    Ok(HullSup {
        value: sol.optimum,
        lower: sol.optimum,
        upper: sol.optimum,
        direction: dir,
    })
}

/// Points of the cube surface `{‖p‖∞ = 1}` on a `k`-grid, radially projected.
pub(crate) fn sphere_grid(n: usize, k: usize) -> Vec<Vec<f64>> {
    let ticks: Vec<f64> = (0..=k).map(|i| -1.0 + 2.0 * i as f64 / k as f64).collect();
    let lo = vec![0i64; n - 1];
    let hi = vec![k as i64; n - 1];
    let cells = crate::geometry::lattice::integer_box(&lo, &hi);
    let mut out = Vec::with_capacity(2 * n * cells.len());
    for face in 0..n {
        for sign in [-1.0, 1.0] {
            for idx in &cells {
                let mut it = idx.iter();
                let p: Vec<f64> = (0..n)
                    .map(|j| {
                        if j == face {
                            sign
                        } else {
                            ticks[*it.next().expect("n - 1 indices") as usize]
                        }
                    })
                    .collect();
                let norm = p.iter().map(|c| c * c).sum::<f64>().sqrt();
                out.push(p.into_iter().map(|c| c / norm).collect());
            }
        }
    }
    out
}

fn sup_grid(s: &Polytope, cone: &AngularCone, x: &[f64], k: usize, exec: Execution) -> HullSup {
    let n = x.len();
    let spacing = ((n - 1) as f64).sqrt() / k as f64;
    let slack = 2.0 * (spacing / 2.0).min(1.0).asin();
    let lipschitz = s
        .vertices()
        .iter()
        .map(|v| v.iter().zip(x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let grid = sphere_grid(n, k);
    let evals = par_map(exec, &grid, |xi| {
        let angle = cone.angle_to_axis(xi);
        if angle > cone.half_angle + slack {
            return None;
        }
        let g = dot(x, xi) - s.support_unchecked(xi);
        Some((g, angle <= cone.half_angle))
    });
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::NEG_INFINITY;
    let mut dir = grid[0].clone();
    for (xi, e) in grid.iter().zip(evals) {
        if let Some((g, inside)) = e {
            if inside && g > lower {
                lower = g;
                dir = xi.clone();
            }
            upper = upper.max(g);
        }
    }
    HullSup {
        value: lower,
        lower,
        upper: upper + lipschitz * spacing,
        direction: dir,
    }
}

/// Evaluates `M(x)` (or its sign-equivalent) for any dimension and cone.
pub fn hull_sup(s: &Polytope, cone: &Cone, x: &[f64], res: Resolution) -> Result<HullSup> {
    check_dim(s.dim(), x.len())?;
    check_dim(s.dim(), cone.dim())?;
    if s.dim() == 1 {
        // directions ±1
        let mut best = HullSup {
            value: f64::NEG_INFINITY,
            lower: f64::NEG_INFINITY,
            upper: f64::NEG_INFINITY,
            direction: vec![1.0],
        };
        for d in [1.0, -1.0] {
            if cone.contains(&[d]) {
                let g = x[0] * d - s.support_unchecked(&[d]);
                if g > best.value {
                    best = HullSup {
                        value: g,
                        lower: g,
                        upper: g,
                        direction: vec![d],
                    };
                }
            }
        }
        return Ok(best);
    }
    match cone {
        _ if s.dim() == 2 => sup_planar(s, cone, x),
        Cone::Polyhedral(p) => sup_polyhedral(s, p.rays(), x),
        Cone::Angular(a) => {
            let mut k = res.initial_grid.max(1);
            loop {
                let sup = sup_grid(s, a, x, k, res.exec);
                if sup.lower > 0.0 || sup.upper <= 0.0 || k >= res.max_grid {
                    return Ok(sup);
                }
                k = (2 * k).min(res.max_grid);
            }
        }
    }
}

/// Decides `x ∈ Ŝ_Γ = {x ∈ ℝⁿ₊ : <x, ξ> <= φ_S(ξ) for ξ ∈ Γ}`.
pub fn hull_membership(
    s: &Polytope,
    cone: &Cone,
    x: &[f64],
    arith: Arith,
    res: Resolution,
) -> Result<HullMembership> {
    check_dim(s.dim(), x.len())?;
    if x.iter().any(|&c| c < 0.0) {
        return Ok(HullMembership::Outside);
    }
    if s.contains(x, arith)? {
        return Ok(HullMembership::Inside);
    }
    let sup = hull_sup(s, cone, x, res)?;
    let xnorm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let tol = 1e-9 * (1.0 + xnorm + s.max_vertex_norm());
    if sup.lower > tol {
        return Ok(HullMembership::Outside);
    }
    if sup.upper < -tol {
        return Ok(HullMembership::Inside);
    }
    let band = sup.upper - sup.lower;
    if band <= tol.max(res.boundary_tol) {
        Ok(HullMembership::Boundary(band.max(tol)))
    } else {
        Err(Error::Uncertifiable {
            band,
            tolerance: res.boundary_tol,
        })
    }
}

/// Whether `Ŝ_Γ = S`.
///
/// In the plane this compares the exact hull polygon with `S` (Hausdorff
/// distance below `1e-9`). In higher dimension it searches lattice and seeded
/// random points for a witness in `Ŝ_Γ \ S`, a one-sided check.
pub fn is_gamma_convex(s: &Polytope, cone: &Cone, arith: Arith) -> Result<bool> {
    if s.dim() == 2 {
        let region = hull_polygon_2d(s, cone)?;
        let poly = region.polygon.expect("planar hull carries a polygon");
        for p in &poly {
            if project_to_polytope(s, p)?.distance > 1e-9 {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let n = s.dim();
    let reach: Vec<f64> = s.bbox_max().iter().map(|b| 2.0 * b + 1.0).collect();
    let mut probes: Vec<Vec<f64>> = Vec::new();
    let steps = 8;
    let lo = vec![0i64; n];
    let hi = vec![steps as i64; n];
    for idx in crate::geometry::lattice::integer_box(&lo, &hi) {
        probes.push(
            idx.iter()
                .zip(&reach)
                .map(|(&i, r)| i as f64 * r / steps as f64)
                .collect(),
        );
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        probes.push(reach.iter().map(|r| rng.gen_range(0.0..*r)).collect());
    }
    let res = Resolution::default();
    for p in probes {
        if s.contains(&p, arith)? {
            continue;
        }
        if let Ok(HullMembership::Inside) = hull_membership(s, cone, &p, arith, res) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::angular::theorem_cone;
    use crate::field::parse_rational;
    use crate::geometry::lattice_gap;
    use crate::geometry::shapes::*;
    use crate::geometry::PolyhedralCone;

    fn quad() -> Polytope {
        let q = |s: &str| parse_rational(s).unwrap();
        quadrilateral(&q("0.1"), &q("0.8")).unwrap()
    }

    #[test]
    fn vertices_are_inside() {
        let s = quad();
        let cone = Cone::Angular(theorem_cone(2, 0.5, 0.0).unwrap());
        for v in s.vertices() {
            let m = hull_membership(&s, &cone, v, Arith::Auto, Resolution::default()).unwrap();
            assert_eq!(m, HullMembership::Inside);
        }
    }

    #[test]
    fn square_half_space_cone() {
        let sq = unit_square();
        let cone = Cone::Angular(AngularCone::half_space(2));
        let m = hull_membership(&sq, &cone, &[3.0, 3.0], Arith::Auto, Resolution::default()).unwrap();
        assert_eq!(m, HullMembership::Outside);
        let m = hull_membership(&sq, &cone, &[-0.1, 0.5], Arith::Auto, Resolution::default()).unwrap();
        assert_eq!(m, HullMembership::Outside);
    }

    #[test]
    fn theorem_hull_gains_axis_point() {
        let s = quad();
        let d4 = lattice_gap(&s, 4, Arith::Auto).unwrap().distance;
        let cone = Cone::Angular(theorem_cone(2, d4, 0.0).unwrap());
        let m = hull_membership(&s, &cone, &[0.25, 0.0], Arith::Auto, Resolution::default()).unwrap();
        assert_eq!(m, HullMembership::Inside);
    }

    #[test]
    fn planar_sup_matches_dense_sampling() {
        let s = quad();
        let cone = Cone::Angular(theorem_cone(2, 0.7, 0.1).unwrap());
        let Cone::Angular(a) = cone else { unreachable!() };
        for x in [[0.25, 0.0], [0.9, 0.5], [0.0, 1.3], [2.0, 2.0], [0.3, 0.3]] {
            let exact = hull_sup(&s, &cone, &x, Resolution::default()).unwrap().value;
            let mut sampled = f64::NEG_INFINITY;
            for k in 0..200_000 {
                let t = k as f64 * TWO_PI / 200_000.0;
                let xi = [t.cos(), t.sin()];
                if a.contains_tol(&xi, 0.0) {
                    sampled = sampled.max(dot(&x, &xi) - s.support_unchecked(&xi));
                }
            }
            assert!(exact >= sampled - 1e-12, "{exact} < {sampled}");
            assert!(exact - sampled < 1e-4, "{exact} vs {sampled}");
        }
    }

    #[test]
    fn polyhedral_lp_agrees_with_planar_arcs() {
        let s = quad();
        let c = PolyhedralCone::new(2, vec![vec![1.0, -0.5], vec![-0.2, 1.0]]).unwrap();
        let planar = Cone::Polyhedral(c.clone());
        for x in [[0.25, 0.0], [0.9, 0.5], [0.0, 1.3], [2.0, 2.0], [0.05, 0.05]] {
            let a = hull_sup(&s, &planar, &x, Resolution::default()).unwrap().value;
            let b = sup_polyhedral(&s, c.rays(), &x).unwrap().value;
            assert_eq!(a > 1e-9, b > 1e-9, "x = {x:?}: {a} vs {b}");
        }
    }

    #[test]
    fn grid_certifies_in_three_dimensions() {
        let t = standard_simplex(3);
        let cone = Cone::Angular(AngularCone::new(3, PI / 2.0).unwrap());
        let res = Resolution::default();
        assert_eq!(
            hull_membership(&t, &cone, &[1.0, 1.0, 1.0], Arith::Auto, res).unwrap(),
            HullMembership::Outside
        );
        assert_eq!(
            hull_membership(&t, &cone, &[0.2, 0.2, 0.2], Arith::Auto, res).unwrap(),
            HullMembership::Inside
        );
    }

    #[test]
    fn sphere_grid_counts() {
        assert_eq!(sphere_grid(3, 4).len(), 6 * 25);
        assert_eq!(sphere_grid(2, 3).len(), 4 * 4);
        for p in sphere_grid(3, 5) {
            assert!((dot(&p, &p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_convexity() {
        let quarter = Cone::Polyhedral(PolyhedralCone::orthant(2));
        assert!(is_gamma_convex(&unit_square(), &quarter, Arith::Auto).unwrap());
        assert!(is_gamma_convex(&standard_simplex(2), &quarter, Arith::Auto).unwrap());
        assert!(is_gamma_convex(&origin(2), &quarter, Arith::Auto).unwrap());
        let s = quad();
        let d4 = lattice_gap(&s, 4, Arith::Auto).unwrap().distance;
        let gamma = Cone::Angular(theorem_cone(2, d4, 0.0).unwrap());
        assert!(!is_gamma_convex(&s, &gamma, Arith::Auto).unwrap());
        let oct = Cone::Polyhedral(PolyhedralCone::orthant(3));
        assert!(is_gamma_convex(&standard_simplex(3), &oct, Arith::Auto).unwrap());
    }
}
