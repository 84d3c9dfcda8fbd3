//! Seeded generators for the property suites.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{CoefficientWindow, Polynomial};
use crate::error::Result;
use crate::field::dot;
use crate::geometry::{is_lower_set, Arith, PolyhedralCone, Polytope};
use crate::linalg::det;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational polygon in `[0,1]²` with 4 to 8 vertices, one of them the origin.
pub fn random_polygon(rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let den = rng.gen_range(2..=12);
        let count = rng.gen_range(4..=10);
        let mut pts = vec![vec![ratio(0, 1), ratio(0, 1)]];
        for _ in 0..count {
            pts.push(vec![ratio(rng.gen_range(0..=den), den), ratio(rng.gen_range(0..=den), den)]);
        }
        if let Ok(p) = Polytope::hull_of_rational(2, pts) {
            let k = p.vertices().len();
            if (4..=8).contains(&k) && p.affine_dim() == 2 {
                return p;
            }
        }
    }
}

/// Convex hull of a random staircase of boxes `[0, p_i]`, checked to be a lower set.
pub fn random_lower_set(rng: &mut ChaCha8Rng) -> Result<Polytope> {
    loop {
        let den = rng.gen_range(2..=10);
        let steps = rng.gen_range(1..=4);
        let mut xs: Vec<i64> = (0..steps).map(|_| rng.gen_range(1..=den)).collect();
        let mut ys: Vec<i64> = (0..steps).map(|_| rng.gen_range(1..=den)).collect();
        xs.sort_unstable();
        ys.sort_unstable_by(|a, b| b.cmp(a));
        let mut pts = vec![vec![ratio(0, 1), ratio(0, 1)]];
        for (&x, &y) in xs.iter().zip(&ys) {
            pts.push(vec![ratio(x, den), ratio(y, den)]);
            pts.push(vec![ratio(x, den), ratio(0, 1)]);
            pts.push(vec![ratio(0, 1), ratio(y, den)]);
        }
        let p = Polytope::hull_of_rational(2, pts)?;
        if is_lower_set(&p, Arith::Exact)? {
            return Ok(p);
        }
    }
}

/// Simplicial cone in dimension `n` together with `c` negative on every ray.
pub fn random_cone(rng: &mut ChaCha8Rng, n: usize) -> (PolyhedralCone, Vec<f64>) {
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let cn = dot(&c, &c).sqrt();
    loop {
        let rays: Vec<Vec<f64>> = (0..n)
            .map(|_| loop {
                let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let vn = dot(&v, &v).sqrt();
                if vn > 0.1 && dot(&c, &v) < -0.2 * cn * vn {
                    break v;
                }
            })
            .collect();
        let scale: f64 = rays.iter().map(|r| dot(r, r).sqrt()).product();
        if det(&rays).abs() > 0.05 * scale {
            return (PolyhedralCone::new(n, rays).expect("valid rays"), c);
        }
    }
}

/// Polynomial in `n` variables with total degree at most `max_degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, n: usize, max_degree: i64) -> Polynomial {
    let mut p = Polynomial::new(n);
    let terms = rng.gen_range(1..=6);
    for _ in 0..terms {
        let mut left = rng.gen_range(0..=max_degree);
        let mut alpha = vec![0; n];
        for a in alpha.iter_mut() {
            let e = rng.gen_range(0..=left);
            *a = e;
            left -= e;
        }
        let c = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        p.add_term(alpha, c);
    }
    p
}

/// Window with log-radii in `[-1, 1]` and `τ_j − σ_j >= 0.1`.
pub fn random_window(rng: &mut ChaCha8Rng, n: usize) -> CoefficientWindow {
    let mut sigma = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    for _ in 0..n {
        let s = rng.gen_range(-1.0..0.9);
        sigma.push(s);
        tau.push(rng.gen_range(s + 0.1..=1.0));
    }
    CoefficientWindow::new(sigma, tau).expect("sigma < tau")
}
