use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::exec::{par_map, Execution};
use crate::field::dot;
use crate::geometry::PolyhedralCone;
use crate::linalg::det;

const CHUNK: usize = 65_536;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// Importance-sampled `∫_C e^{<c, ξ>} dξ` over a simplicial cone.
///
/// Writes `ξ = Σ λ_i v_i` and draws `λ_i ~ Exp(ρ·κ_i)` with `κ_i = −<c, v_i>`
/// and `ρ = 1/2`, so the weights stay bounded. Each chunk of samples has its
/// own seeded stream, so the estimate does not depend on thread count.
pub fn monte_carlo_cone_integral(
    cone: &PolyhedralCone,
    c: &[f64],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<MonteCarloEstimate> {
    let n = cone.dim();
    check_dim(n, c.len())?;
    let rays = cone.rays();
    if rays.len() != n {
        return Err(Error::InvalidArgument("Monte Carlo needs a simplicial cone".into()));
    }
    let jac = det(rays).abs();
    if jac == 0.0 {
        return Err(Error::SingularRays);
    }
    let kappa: Vec<f64> = rays.iter().map(|r| -dot(c, r)).collect();
    if kappa.iter().any(|&k| k <= 0.0) {
        return Err(Error::InvalidArgument("integral diverges; nothing to sample".into()));
    }
    let rates: Vec<f64> = kappa.iter().map(|k| 0.5 * k).collect();
    let norm: f64 = jac / rates.iter().product::<f64>();
    let chunks: Vec<usize> = (0..samples.div_ceil(CHUNK)).collect();
    let partial = par_map(exec, &chunks, |&ci| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ci as u64);
        let count = CHUNK.min(samples - ci * CHUNK);
        let (mut s1, mut s2) = (0.0, 0.0);
        let mut xi = vec![0.0; n];
        let mut lam = vec![0.0; n];
        for _ in 0..count {
            xi.iter_mut().for_each(|v| *v = 0.0);
            for (i, r) in rays.iter().enumerate() {
                let u: f64 = rng.gen();
                lam[i] = -(1.0 - u).ln() / rates[i];
                for k in 0..n {
                    xi[k] += lam[i] * r[k];
                }
            }
            let log_density: f64 = lam.iter().zip(&rates).map(|(l, r)| -l * r).sum();
            let wgt = norm * (dot(c, &xi) - log_density).exp();
            s1 += wgt;
            s2 += wgt * wgt;
        }
        (s1, s2)
    });
    let (s1, s2) = partial.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let nf = samples as f64;
    let mean = s1 / nf;
    let var = (s2 / nf - mean * mean).max(0.0);
    Ok(MonteCarloEstimate {
        value: mean,
        std_error: (var / nf).sqrt(),
    })
}
