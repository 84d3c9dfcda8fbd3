use num_complex::Complex64;
use slelong_core::analysis::*;
use slelong_core::cones::{hull_polygon_2d, theorem_cone, Cone, HullMembership};
use slelong_core::error::Error;
use slelong_core::field::parse_rational;
use slelong_core::geometry::shapes::*;
use slelong_core::geometry::*;
use slelong_core::integrals::{QuadratureBudget, Status, WeightSpec};

fn quad() -> Polytope {
    let q = |s: &str| parse_rational(s).unwrap();
    quadrilateral(&q("0.1"), &q("0.8")).unwrap()
}

#[test]
fn classify_quadrilateral_gains_a_lattice_point() {
    let table = classify(&quad(), 4, 0.0, &ClassifyOptions::default()).unwrap();
    let row = table.rows.iter().find(|r| r.alpha == vec![1, 0]).unwrap();
    assert!(!row.in_ms);
    assert_eq!(row.finite.status, Status::Finite);
    assert_eq!(row.in_hull(), Some(true));
    let mut sorted = table.rows.clone();
    sorted.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    assert_eq!(sorted, table.rows);
}

#[test]
fn classify_square_has_no_gain() {
    let table = classify(&unit_square(), 2, 0.0, &ClassifyOptions::default()).unwrap();
    assert!(!table.rows.iter().any(|r| r.is_finite() && !r.in_ms));
}

#[test]
fn classify_origin_only() {
    let table = classify(&origin(2), 1, 0.0, &ClassifyOptions::default()).unwrap();
    let row = table.rows.iter().find(|r| r.alpha == vec![0, 0]).unwrap();
    assert!(row.in_ms);
    assert_eq!(row.finite.status, Status::Divergent);
    assert!(table.rows.iter().all(|r| !r.is_finite()));
}

#[test]
fn theorem_holds_on_quadrilaterals() {
    for (a, b) in [("0.1", "0.8"), ("0.15", "0.85")] {
        let s = quadrilateral(&parse_rational(a).unwrap(), &parse_rational(b).unwrap()).unwrap();
        let r = verify_theorem(&s, 4, 0.0, &ClassifyOptions::default()).unwrap();
        assert!(r.pass, "{a} {b}: {:?}", r.violations);
    }
}

#[test]
fn near_gap_gamma_widens_the_cone() {
    let s = quad();
    let d = lattice_gap(&s, 4, Arith::Exact).unwrap().distance;
    let narrow = verify_theorem(&s, 4, 0.0, &ClassifyOptions::default()).unwrap();
    let wide = verify_theorem(&s, 4, 0.99 * d, &ClassifyOptions::default()).unwrap();
    assert!(wide.pass);
    assert!(wide.half_angle.unwrap() < narrow.half_angle.unwrap());
    let area = |gamma: f64| {
        let cone = Cone::Angular(theorem_cone(2, d, gamma).unwrap());
        let poly = hull_polygon_2d(&s, &cone).unwrap().polygon.unwrap();
        let k = poly.len();
        (0..k)
            .map(|i| poly[i][0] * poly[(i + 1) % k][1] - poly[(i + 1) % k][0] * poly[i][1])
            .sum::<f64>()
            .abs()
            / 2.0
    };
    assert!(area(0.99 * d) > area(0.0));
}

#[test]
fn corollary_cases() {
    let orth = PolyhedralCone::orthant(2);
    let r = verify_corollaries(&unit_square(), 2, 0.0, Some(&orth), &ClassifyOptions::default()).unwrap();
    assert!(r.lower_set && r.lambda_convex == Some(true));
    assert_eq!(r.strengthened_pass, Some(true));

    let r = verify_corollaries(&quad(), 4, 0.0, None, &ClassifyOptions::default()).unwrap();
    assert!(!r.lower_set && !r.same_lattice_points && !r.applies);

    let r = verify_corollaries(&standard_simplex(2), 3, 0.0, None, &ClassifyOptions::default()).unwrap();
    assert!(r.lower_set);
    assert_eq!(r.strengthened_pass, Some(true));

    let bad = PolyhedralCone::new(2, vec![vec![1.0, 0.0], vec![-1.0, -0.5]]).unwrap();
    let r = verify_corollaries(&unit_square(), 2, 0.0, Some(&bad), &ClassifyOptions::default()).unwrap();
    assert!(r.lambda_convex.is_none() && r.lambda_note.is_some());
}

#[test]
fn quadrilateral_golden_terms() {
    let p = Example41Params::parse(4, "0.1", "0.8", 1).unwrap();
    let r = example41(&p, QuadratureBudget::default()).unwrap();
    assert!((r.formula.origin - 0.125).abs() < 1e-15);
    assert!((r.formula.y_axis - 0.125).abs() < 1e-15);
    assert!(r.max_rel_diff <= 1e-12);
    assert!(r.quadrature_rel_err <= 1e-4);
    assert!(!r.in_ms && r.finite.is_finite());

    for k in [1, 2] {
        let p = Example41Params::parse(5, "0.15", "0.85", k).unwrap();
        let r = example41(&p, QuadratureBudget::default()).unwrap();
        assert!(r.fan.as_array().iter().all(|&v| v > 0.0 && v.is_finite()));
        assert!(r.max_rel_diff <= 1e-12);
        assert!(r.quadrature_rel_err <= 1e-4);
    }
}

#[test]
fn quadrilateral_parameter_errors() {
    let p = Example41Params::parse(3, "0.1", "0.8", 1).unwrap();
    match example41(&p, QuadratureBudget::default()) {
        Err(Error::ParameterConstraint(msg)) => assert_eq!(msg, "m ≥ 4 required"),
        other => panic!("{other:?}"),
    }
    let p = Example41Params::parse(4, "0.1", "0.8", 2).unwrap();
    assert!(matches!(p.validate(), Err(Error::ParameterConstraint(_))));
}

#[test]
fn cauchy_coefficients() {
    let f = Polynomial::monomial(vec![1, 2], Complex64::new(1.0, 0.0));
    let l2 = 2f64.ln();
    let win = CoefficientWindow::new(vec![0.0, 0.0], vec![l2, l2]).unwrap();
    let nodes = Nodes::for_degrees(&f.degrees());
    let a12 = taylor_coefficient(|z| f.eval(z), &[1, 2], &win, &nodes).unwrap();
    assert!((a12 - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    let a21 = taylor_coefficient(|z| f.eval(z), &[2, 1], &win, &nodes).unwrap();
    assert!(a21.norm() < 1e-10);

    let mut g = Polynomial::new(1);
    g.add_term(vec![0], Complex64::new(3.0, 0.0)).add_term(vec![4], Complex64::new(5.0, 0.0));
    let win = CoefficientWindow::new(vec![-1.0], vec![1.0]).unwrap();
    let a4 = taylor_coefficient(|z| g.eval(z), &[4], &win, &Nodes::for_degrees(&g.degrees())).unwrap();
    assert!((a4 - Complex64::new(5.0, 0.0)).norm() < 1e-8);
}

#[test]
fn bound_edge_cases() {
    let w = WeightSpec::new(quad(), 4, 0.0).unwrap();
    let win = CoefficientWindow::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
    assert_eq!(coefficient_bound(0.0, &w, &[1, 0], &win, 2.0).unwrap(), 0.0);
    let small = coefficient_bound(1.0, &w, &[1, 0], &win, 1e-4).unwrap();
    let mid = coefficient_bound(1.0, &w, &[1, 0], &win, 1e-1).unwrap();
    assert!(small > mid && small > 1e3);
}

#[test]
fn decay_outside_hull() {
    let s = quad();
    let cone = slelong_core::cones::Cone::Angular(
        slelong_core::cones::theorem_cone(2, lattice_gap(&s, 4, Arith::Exact).unwrap().distance, 0.0).unwrap(),
    );
    let hm = slelong_core::cones::hull_membership(&s, &cone, &[4.0, 0.0], Arith::Auto, Default::default()).unwrap();
    assert_eq!(hm, HullMembership::Outside);
    let c = decay_demo(&s, 4, 0.0, &[4, 0], &DecayOptions::default()).unwrap();
    assert!(c.decays());

    let c = decay_demo(&segment("1"), 1, 0.0, &[3], &DecayOptions::default()).unwrap();
    assert!(c.decays());
}

#[test]
fn decay_rejects_hull_points() {
    let s = quad();
    let r = decay_demo(&s, 4, 0.0, &[0, 2], &DecayOptions::default());
    assert!(matches!(r, Err(Error::InHull { .. })), "{r:?}");
}
