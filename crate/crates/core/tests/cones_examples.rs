use std::f64::consts::PI;

use slelong_core::cones::*;
use slelong_core::field::parse_rational;
use slelong_core::geometry::shapes::*;
use slelong_core::geometry::*;

fn quad() -> Polytope {
    let q = |s: &str| parse_rational(s).unwrap();
    quadrilateral(&q("0.1"), &q("0.8")).unwrap()
}

fn theorem_gamma(s: &Polytope, m: u64) -> Cone {
    let d = lattice_gap(s, m, Arith::Exact).unwrap().distance;
    Cone::Angular(theorem_cone(2, d, 0.0).unwrap())
}

#[test]
fn theorem_cone_angles() {
    assert!((theorem_cone(2, 1.0, 0.0).unwrap().half_angle - 3.0 * PI / 4.0).abs() < 1e-12);
    assert!((theorem_cone(1, 1.0, 0.0).unwrap().half_angle - PI).abs() < 1e-12);
    let c = theorem_cone(2, 0.5, 0.25).unwrap();
    assert!((c.half_angle.cos() * 2f64.sqrt() + 0.25).abs() < 1e-12);
    assert!((c.half_angle - 1.748506927640008).abs() < 1e-12);
    assert!(theorem_cone(2, 0.5, 0.5).is_err());
}

#[test]
fn angular_membership() {
    let c = AngularCone::new(2, 3.0 * PI / 4.0).unwrap();
    assert!(c.contains(&[1.0, 1.0]));
    assert!(!c.contains(&[-1.0, -1.0]));
    assert!(c.contains(&[1.0, -1.0]));
    assert!(c.contains(&[0.0, 0.0]));
}

#[test]
fn hull_membership_cases() {
    let s = quad();
    let cone = theorem_gamma(&s, 4);
    for v in s.vertices() {
        assert_eq!(
            hull_membership(&s, &cone, v, Arith::Auto, Resolution::default()).unwrap(),
            HullMembership::Inside
        );
    }
    assert_eq!(
        hull_membership(&s, &cone, &[0.25, 0.0], Arith::Auto, Resolution::default()).unwrap(),
        HullMembership::Inside
    );
    let half = Cone::Angular(AngularCone::half_space(2));
    assert_eq!(
        hull_membership(&unit_square(), &half, &[3.0, 3.0], Arith::Auto, Resolution::default()).unwrap(),
        HullMembership::Outside
    );
}

#[test]
fn hull_polygons() {
    let orth = Cone::Polyhedral(PolyhedralCone::orthant(2));
    for s in [unit_square(), standard_simplex(2)] {
        let region = hull_polygon_2d(&s, &orth).unwrap();
        let poly = region.polygon.unwrap();
        assert_eq!(poly.len(), s.vertices().len());
        for p in &poly {
            assert!(project_to_polytope(&s, p).unwrap().distance < 1e-9);
        }
    }
    let s = quad();
    let cone = theorem_gamma(&s, 4);
    let region = hull_polygon_2d(&s, &cone).unwrap();
    assert!(region.contains(&[0.25, 0.0], 1e-12));
    assert!(!s.contains(&[0.25, 0.0], Arith::Exact).unwrap());
    for p in region.polygon.as_ref().unwrap() {
        let m = hull_membership(&s, &cone, p, Arith::Auto, Resolution::default()).unwrap();
        assert!(!m.is_outside(), "{p:?}: {m:?}");
    }
}

#[test]
fn triangulations() {
    let q = PolyhedralCone::orthant(2);
    assert_eq!(triangulate(&q).unwrap().len(), 1);
    let o = PolyhedralCone::orthant(3);
    assert_eq!(triangulate(&o).unwrap().len(), 1);
    let sq = PolyhedralCone::new(
        3,
        vec![
            vec![1.0, 1.0, 1.0],
            vec![-1.0, 1.0, 1.0],
            vec![-1.0, -1.0, 1.0],
            vec![1.0, -1.0, 1.0],
        ],
    )
    .unwrap();
    assert_eq!(triangulate(&sq).unwrap().len(), 2);
    let line = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    assert!(triangulate(&line).is_err());
}

#[test]
fn gamma_convexity() {
    let orth = Cone::Polyhedral(PolyhedralCone::orthant(2));
    assert!(is_gamma_convex(&unit_square(), &orth, Arith::Auto).unwrap());
    let s = quad();
    assert!(!is_gamma_convex(&s, &theorem_gamma(&s, 4), Arith::Auto).unwrap());
    assert!(is_gamma_convex(&origin(2), &orth, Arith::Auto).unwrap());
}
