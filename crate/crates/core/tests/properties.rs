use num_complex::Complex64;
use proptest::prelude::*;
use slelong_core::analysis::*;
use slelong_core::exec::Execution;
use slelong_core::geometry::*;
use slelong_core::integrals::*;
use slelong_core::random::{random_cone, random_polygon, random_polynomial, random_window, rng};

fn unit(t: f64) -> [f64; 2] {
    [t.cos(), t.sin()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn support_is_homogeneous_and_subadditive(seed in 0u64..10_000, t in 0.0f64..7.0, u in 0.0f64..7.0, r in 0.01f64..50.0) {
        let s = random_polygon(&mut rng(seed));
        let (x, y) = (unit(t), unit(u));
        let phi = |v: &[f64]| s.support_value(v).unwrap();
        let scaled = [r * x[0], r * x[1]];
        prop_assert!((phi(&scaled) - r * phi(&x)).abs() <= 1e-12 * (1.0 + r));
        let sum = [x[0] + y[0], x[1] + y[1]];
        prop_assert!(phi(&sum) <= phi(&x) + phi(&y) + 1e-12);
    }

    #[test]
    fn fan_cells_own_their_maximizers(seed in 0u64..10_000, t in 0.0f64..7.0) {
        let s = random_polygon(&mut rng(seed));
        let fan = normal_fan(&s).unwrap();
        let xi = unit(t);
        let cell = fan.locate(&xi, 1e-12).unwrap();
        let v = &s.vertices()[cell.vertex];
        prop_assert!((v[0] * xi[0] + v[1] * xi[1] - s.support_value(&xi).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn projection_is_no_farther_than_any_vertex(seed in 0u64..10_000, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let s = random_polygon(&mut rng(seed));
        let p = project_to_polytope(&s, &[x, y]).unwrap();
        for v in s.vertices() {
            prop_assert!(p.distance <= ((v[0] - x).powi(2) + (v[1] - y).powi(2)).sqrt() + 1e-9);
        }
        prop_assert!(s.contains(&p.point, Arith::Float).unwrap());
        if s.contains(&[x, y], Arith::Float).unwrap() {
            prop_assert!(p.distance < 1e-9);
        }
    }

    #[test]
    fn gap_never_exceeds_one(seed in 0u64..10_000, m in 1u64..=5) {
        let s = random_polygon(&mut rng(seed));
        let g = lattice_gap(&s, m, Arith::Exact).unwrap();
        prop_assert!(g.distance > 0.0 && g.distance <= 1.0 + 1e-9);
    }

    #[test]
    fn simplicial_integral_ignores_ray_scaling(seed in 0u64..10_000, n in 2usize..=3, t in 0.05f64..20.0, i in 0usize..3) {
        let (cone, c) = random_cone(&mut rng(seed), n);
        let base = simplicial_exp_integral(&cone, &c).unwrap();
        let mut rays = cone.rays().to_vec();
        let i = i % n;
        rays[i] = rays[i].iter().map(|v| v * t).collect();
        let scaled = simplicial_exp_integral(&PolyhedralCone::new(n, rays).unwrap(), &c).unwrap();
        prop_assert!((scaled - base).abs() <= 1e-10 * base);
    }

    #[test]
    fn exponent_is_concave_and_homogeneous(
        seed in 0u64..10_000, m in 1u64..=5, gamma in 0.0f64..2.0,
        a0 in 0i64..6, a1 in 0i64..6,
        x in prop::array::uniform2(-5.0f64..5.0), y in prop::array::uniform2(-5.0f64..5.0), r in 0.0f64..30.0,
    ) {
        let w = WeightSpec::new(random_polygon(&mut rng(seed)), m, gamma).unwrap();
        let alpha = [a0, a1];
        let mid = [(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0];
        let e = |p: &[f64]| w.exponent(&alpha, p);
        prop_assert!(e(&mid) >= (e(&x) + e(&y)) / 2.0 - 1e-9);
        prop_assert!((e(&[r * x[0], r * x[1]]) - r * e(&x)).abs() <= 1e-9 * (1.0 + r));
    }

    #[test]
    fn larger_gamma_keeps_finite_verdicts(seed in 0u64..10_000, m in 1u64..=4, a0 in 0i64..6, a1 in 0i64..6, gamma in 0.01f64..3.0) {
        let s = random_polygon(&mut rng(seed));
        let alpha = [a0, a1];
        let v0 = finiteness_lp(&WeightSpec::new(s.clone(), m, 0.0).unwrap(), &alpha).unwrap();
        if v0.is_finite() {
            let v = finiteness_lp(&WeightSpec::new(s, m, gamma).unwrap(), &alpha).unwrap();
            prop_assert!(v.is_finite());
        }
    }

    #[test]
    fn divergence_witnesses_hold(seed in 0u64..10_000, m in 1u64..=4, gamma in 0.0f64..1.0, a0 in 0i64..8, a1 in 0i64..8) {
        let w = WeightSpec::new(random_polygon(&mut rng(seed)), m, gamma).unwrap();
        let alpha = [a0, a1];
        let v = finiteness_lp(&w, &alpha).unwrap();
        if v.status == Status::Divergent {
            let wit = v.witness.unwrap();
            prop_assert!(w.exponent(&alpha, &wit) >= -1e-12);
        }
        if v.status == Status::Finite {
            prop_assert!(v.face_maxima.iter().all(|&f| f <= -v.margin));
        }
    }

    #[test]
    fn lp_and_closed_form_agree(seed in 0u64..10_000, m in 1u64..=4, a0 in 0i64..6, a1 in 0i64..6) {
        let w = WeightSpec::new(random_polygon(&mut rng(seed)), m, 0.0).unwrap();
        let alpha = [a0, a1];
        let v = finiteness_lp(&w, &alpha).unwrap();
        let cf = monomial_norm_closed_form(&w, &alpha).unwrap();
        match v.status {
            Status::Finite => prop_assert!(cf.value.is_finite() && cf.value > 0.0),
            Status::Divergent => prop_assert!(cf.value.is_infinite()),
            Status::Marginal => {}
        }
    }

    #[test]
    fn coefficients_do_not_depend_on_window(seed in 0u64..10_000, n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_polynomial(&mut r, n, 5);
        let windows = [random_window(&mut r, n), random_window(&mut r, n), random_window(&mut r, n)];
        let alphas: Vec<Vec<i64>> = f.terms.keys().cloned().collect();
        let nodes = Nodes::for_degrees(&f.degrees());
        for win in &windows {
            let got = taylor_coefficients(|z: &[Complex64]| f.eval(z), &alphas, win, &nodes).unwrap();
            for (a, c) in alphas.iter().zip(got) {
                prop_assert!((c - f.coefficient(a)).norm() <= 1e-8);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classification_implications(seed in 0u64..10_000, m in 1u64..=3) {
        let s = random_polygon(&mut rng(seed));
        let table = classify(&s, m, 0.0, &ClassifyOptions::default()).unwrap();
        for row in &table.rows {
            if row.in_ms {
                prop_assert_eq!(row.in_hull(), Some(true));
            }
            if row.is_finite() && row.in_hull() == Some(false) {
                // outside the hull yet integrable: only possible when the separating
                // excess stays below the lattice gap
                let x: Vec<f64> = row.alpha.iter().map(|&a| a as f64 / m as f64).collect();
                let sup = slelong_core::cones::hull_sup(&s, &table.cone, &x, Default::default()).unwrap();
                prop_assert!(m as f64 * sup.value < table.gap.distance + 1e-9);
            }
        }
    }

    #[test]
    fn parallel_and_sequential_tables_match(seed in 0u64..10_000, m in 1u64..=3) {
        let s = random_polygon(&mut rng(seed));
        let par = classify(&s, m, 0.0, &ClassifyOptions { exec: Execution::Parallel, ..Default::default() }).unwrap();
        let seq = classify(&s, m, 0.0, &ClassifyOptions { exec: Execution::Sequential, ..Default::default() }).unwrap();
        prop_assert_eq!(par.rows, seq.rows);
    }
}
