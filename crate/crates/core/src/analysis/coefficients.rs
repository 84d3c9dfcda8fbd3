use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::exec::Execution;
use crate::geometry::lattice::integer_box;
use crate::integrals::quadrature::tie_points;
use crate::integrals::{finiteness_lp, integrate_box_with, quadrature_norm, GammaTerm, QuadratureBudget, WeightSpec};

/// Finite sum `Σ c_β z^β`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    pub dim: usize,
    pub terms: BTreeMap<Vec<i64>, Complex64>,
}

impl Polynomial {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(alpha: Vec<i64>, c: Complex64) -> Self {
        let mut p = Self::new(alpha.len());
        p.add_term(alpha, c);
        p
    }

    pub fn add_term(&mut self, alpha: Vec<i64>, c: Complex64) -> &mut Self {
        assert_eq!(alpha.len(), self.dim, "exponent length");
        *self.terms.entry(alpha).or_insert(Complex64::new(0.0, 0.0)) += c;
        self
    }

    pub fn coefficient(&self, alpha: &[i64]) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    /// Largest exponent of each variable.
    pub fn degrees(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|j| self.terms.keys().map(|a| a[j]).max().unwrap_or(0))
            .collect()
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.iter()
                    .zip(z)
                    .fold(*c, |acc, (&e, w)| acc * w.powi(e as i32))
            })
            .sum()
    }
}

/// Log-radii `σ < τ` defining `A_{σ,τ}` and `K_{σ,τ} = Π [σ_j, τ_j]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientWindow {
    pub sigma: Vec<f64>,
    pub tau: Vec<f64>,
}

impl CoefficientWindow {
    pub fn new(sigma: Vec<f64>, tau: Vec<f64>) -> Result<Self> {
        check_dim(sigma.len(), tau.len())?;
        if sigma.iter().zip(&tau).any(|(s, t)| !(s < t)) {
            return Err(Error::InvalidArgument("window needs sigma_j < tau_j".into()));
        }
        Ok(Self { sigma, tau })
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    /// `v(A_{σ,τ}) = πⁿ Π (e^{2τ_j} − e^{2σ_j})`.
    pub fn volume(&self) -> f64 {
        self.sigma
            .iter()
            .zip(&self.tau)
            .map(|(s, t)| PI * ((2.0 * t).exp() - (2.0 * s).exp()))
            .product()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            sigma: self.sigma.iter().map(|s| s * t).collect(),
            tau: self.tau.iter().map(|v| v * t).collect(),
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, `p >= 1`.
pub fn gauss_legendre(p: usize) -> Vec<(f64, f64)> {
    assert!(p >= 1, "at least one node");
    let mut out = Vec::with_capacity(p);
    for i in 0..p {
        let mut x = (PI * (i as f64 + 0.75) / (p as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=p {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = p as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Node counts for the Cauchy average: `angular[j]` trapezoid points in
/// `θ_j`, `radial` Gauss–Legendre points in each `r_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Nodes {
    pub angular: Vec<usize>,
    pub radial: usize,
}

impl Nodes {
    /// Exact for `f` of degree `deg_j` in `z_j` and exponents `α_j <= deg_j`.
    pub fn for_degrees(deg: &[i64]) -> Self {
        Self {
            angular: deg.iter().map(|&d| 2 * d.max(0) as usize + 1).collect(),
            radial: 4,
        }
    }
}

/// `a_α = v(A)^{-1} ∫_A f(ζ) ζ^{-α} dλ(ζ)` for each requested `α`, sharing one
/// sample grid.
pub fn taylor_coefficients<F>(
    f: F,
    alphas: &[Vec<i64>],
    window: &CoefficientWindow,
    nodes: &Nodes,
) -> Result<Vec<Complex64>>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    let n = window.dim();
    check_dim(n, nodes.angular.len())?;
    for a in alphas {
        check_dim(n, a.len())?;
    }
    let gl = gauss_legendre(nodes.radial);
    // per dimension: (r, θ, weight) with dλ = r dr dθ
    let axes: Vec<Vec<(f64, f64, f64)>> = (0..n)
        .map(|j| {
            let (lo, hi) = (window.sigma[j].exp(), window.tau[j].exp());
            let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            let na = nodes.angular[j];
            let mut pts = Vec::with_capacity(na * gl.len());
            for &(x, w) in &gl {
                let r = c + h * x;
                for k in 0..na {
                    let theta = 2.0 * PI * k as f64 / na as f64;
                    pts.push((r, theta, w * h * r * 2.0 * PI / na as f64));
                }
            }
            pts
        })
        .collect();
    let lo = vec![0i64; n];
    let hi: Vec<i64> = axes.iter().map(|a| a.len() as i64 - 1).collect();
    let mut sums = vec![Complex64::new(0.0, 0.0); alphas.len()];
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    for idx in integer_box(&lo, &hi) {
        let mut weight = 1.0;
        for j in 0..n {
            let (r, th, w) = axes[j][idx[j] as usize];
            z[j] = Complex64::from_polar(r, th);
            weight *= w;
        }
        let fz = f(&z) * weight;
        for (s, a) in sums.iter_mut().zip(alphas) {
            let za = a
                .iter()
                .zip(&z)
                .fold(Complex64::new(1.0, 0.0), |acc, (&e, w)| acc * w.powi(e as i32));
            *s += fz / za;
        }
    }
    let vol = window.volume();
    Ok(sums.into_iter().map(|s| s / vol).collect())
}

pub fn taylor_coefficient<F>(f: F, alpha: &[i64], window: &CoefficientWindow, nodes: &Nodes) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    Ok(taylor_coefficients(f, &[alpha.to_vec()], window, nodes)?[0])
}

/// `‖f‖_ψ` for the comparison weight `2χ(log|ζ|)`, by orthogonality of monomials.
pub fn polynomial_norm(f: &Polynomial, w: &WeightSpec, budget: QuadratureBudget) -> Result<f64> {
    let budget = QuadratureBudget {
        gamma_term: GammaTerm::MaxComparison,
        ..budget
    };
    let mut sq = 0.0;
    for (a, c) in &f.terms {
        if c.norm() == 0.0 {
            continue;
        }
        let v = finiteness_lp(w, a)?;
        if !v.is_finite() {
            return Err(Error::TailUnavailable { face_max: v.max });
        }
        sq += c.norm_sqr() * quadrature_norm(w, a, budget)?.value;
    }
    Ok(sq.sqrt())
}

/// `log` of `‖f‖_ψ Π_j (1 − e^{−2(τ_j−σ_j)t})^{-1} e^{−t<𝟙,τ>} (∫_{tK} e^{2(χ(ξ) − <α,ξ>)} dξ)^{1/2}`.
pub fn log_coefficient_bound(
    norm: f64,
    w: &WeightSpec,
    alpha: &[i64],
    window: &CoefficientWindow,
    t: f64,
) -> Result<f64> {
    let n = w.dim();
    check_dim(n, window.dim())?;
    check_dim(n, alpha.len())?;
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    if norm == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let k = window.scaled(t);
    let g = |xi: &[f64]| {
        2.0 * (w.chi(xi) - alpha.iter().zip(xi).map(|(&a, x)| a as f64 * x).sum::<f64>())
    };
    // g is convex, so its max over the box is at a corner
    let corners = integer_box(&vec![0; n], &vec![1; n]);
    let top = corners
        .iter()
        .map(|c| {
            let xi: Vec<f64> = (0..n).map(|j| if c[j] == 0 { k.sigma[j] } else { k.tau[j] }).collect();
            g(&xi)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let integrand = |xi: &[f64]| (g(xi) - top).exp();
    let kinks = |prefix: &[f64]| tie_points(w, GammaTerm::MaxComparison, prefix);
    let (rel, _) = integrate_box_with(&integrand, &k.sigma, &k.tau, &[0.0], &kinks, 1e-8, Execution::Sequential);
    let prefactor: f64 = window
        .sigma
        .iter()
        .zip(&window.tau)
        .map(|(s, tt)| -(-(-2.0 * (tt - s) * t).exp()).ln_1p())
        .sum();
    let one_tau: f64 = window.tau.iter().sum();
    Ok(norm.ln() + prefactor - t * one_tau + 0.5 * (top + rel.ln()))
}

pub fn coefficient_bound(norm: f64, w: &WeightSpec, alpha: &[i64], window: &CoefficientWindow, t: f64) -> Result<f64> {
    Ok(log_coefficient_bound(norm, w, alpha, window, t)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let gl = gauss_legendre(5);
        let s: f64 = gl.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
        let s: f64 = gl.iter().map(|(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cauchy_examples() {
        let f = Polynomial::monomial(vec![1, 2], c(1.0));
        let win = CoefficientWindow::new(vec![0.0, 0.0], vec![2f64.ln(), 2f64.ln()]).unwrap();
        let nodes = Nodes::for_degrees(&[2, 2]);
        let a = taylor_coefficient(|z: &[Complex64]| f.eval(z), &[1, 2], &win, &nodes).unwrap();
        assert!((a - c(1.0)).norm() < 1e-12);
        let b = taylor_coefficient(|z: &[Complex64]| f.eval(z), &[2, 1], &win, &nodes).unwrap();
        assert!(b.norm() < 1e-12);

        let win = CoefficientWindow::new(vec![-1.0], vec![1.0]).unwrap();
        let g = |z: &[Complex64]| c(3.0) + c(5.0) * z[0].powi(4);
        let a = taylor_coefficient(g, &[4], &win, &Nodes::for_degrees(&[4])).unwrap();
        assert!((a - c(5.0)).norm() < 1e-12);
    }

    #[test]
    fn bound_limits() {
        let w = WeightSpec::new(segment("1"), 1, 0.0).unwrap();
        let win = CoefficientWindow::new(vec![0.5], vec![1.0]).unwrap();
        assert_eq!(coefficient_bound(0.0, &w, &[3], &win, 2.0).unwrap(), 0.0);
        let small = coefficient_bound(1.0, &w, &[3], &win, 1e-6).unwrap();
        assert!(small > 1e2);
    }

    #[test]
    fn bound_in_one_dimension_matches_hand_integral() {
        // S = [0,1], m = 1, γ = 0, α = 3 and 0 < σ < τ: ∫_{tσ}^{tτ} e^{2(ξ − 3ξ)} dξ
        let w = WeightSpec::new(segment("1"), 1, 0.0).unwrap();
        let win = CoefficientWindow::new(vec![0.5], vec![1.0]).unwrap();
        for t in [0.5f64, 2.0, 10.0] {
            let integral = ((-2.0 * t).exp() - (-4.0 * t).exp()) / 4.0;
            let expect = integral.sqrt() * (-t).exp() / (1.0 - (-t).exp());
            let got = coefficient_bound(1.0, &w, &[3], &win, t).unwrap();
            assert!((got / expect - 1.0).abs() < 1e-7, "{t}: {got} vs {expect}");
        }
    }

    #[test]
    fn window_volume() {
        let win = CoefficientWindow::new(vec![0.0], vec![1.0]).unwrap();
        assert!((win.volume() - PI * (2f64.exp() - 1.0)).abs() < 1e-12);
        assert!(CoefficientWindow::new(vec![1.0], vec![1.0]).is_err());
    }
}
