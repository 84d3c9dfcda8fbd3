use serde::Serialize;

use crate::analysis::coefficients::{log_coefficient_bound, CoefficientWindow};
use crate::cones::{hull_membership, hull_sup, theorem_cone, Cone, HullMembership, Resolution};
use crate::error::{Error, Result};
use crate::field::dot;
use crate::geometry::lattice::integer_box;
use crate::geometry::{lattice_gap, Arith, Polytope};
use crate::integrals::WeightSpec;

const NUDGE: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct DecayOptions {
    /// `‖f‖_ψ` multiplying the bound.
    pub norm: f64,
    pub t_start: f64,
    pub t_max: f64,
    pub per_decade: usize,
    pub threshold: f64,
    pub cone: Option<Cone>,
    pub arith: Arith,
    pub resolution: Resolution,
}

impl Default for DecayOptions {
    fn default() -> Self {
        Self {
            norm: 1.0,
            t_start: 0.1,
            t_max: 1e5,
            per_decade: 8,
            threshold: 1e-6,
            cone: None,
            arith: Arith::Auto,
            resolution: Resolution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecaySample {
    pub t: f64,
    pub bound: f64,
    pub log_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayCurve {
    pub alpha: Vec<i64>,
    pub tau: Vec<f64>,
    pub sigma: Vec<f64>,
    pub epsilon: f64,
    /// `<α, τ> − m·φ_S(τ)`.
    pub violation: f64,
    pub samples: Vec<DecaySample>,
    pub below_threshold: bool,
    /// Strictly decreasing over the last decade of `t`.
    pub final_decade_monotone: bool,
    pub note: String,
}

impl DecayCurve {
    pub fn decays(&self) -> bool {
        self.below_threshold && self.final_decade_monotone
    }
}

/// Rotates unit `tau` toward `𝟙/√n` by `angle` radians (no-op if parallel).
fn nudge_toward_axis(tau: &[f64], angle: f64) -> Vec<f64> {
    let n = tau.len();
    let axis = vec![1.0 / (n as f64).sqrt(); n];
    let c = dot(tau, &axis);
    let perp: Vec<f64> = axis.iter().zip(tau).map(|(a, t)| a - c * t).collect();
    let pn = perp.iter().map(|v| v * v).sum::<f64>().sqrt();
    if pn < 1e-14 {
        return tau.to_vec();
    }
    let step = angle.min(c.clamp(-1.0, 1.0).acos());
    tau.iter()
        .zip(&perp)
        .map(|(t, p)| step.cos() * t + step.sin() * p / pn)
        .collect()
}

/// Bound curve `t ↦ |a_α|` estimate for an exponent outside `m·Ŝ_Γ`, built
/// from a separating direction `τ ∈ Γ` and a window `σ < τ`.
pub fn decay_demo(s: &Polytope, m: u64, gamma: f64, alpha: &[i64], opts: &DecayOptions) -> Result<DecayCurve> {
    let w = WeightSpec::new(s.clone(), m, gamma)?;
    w.check_alpha(alpha)?;
    let n = s.dim();
    let cone = match &opts.cone {
        Some(c) => c.clone(),
        None => {
            let gap = lattice_gap(s, m, opts.arith)?;
            Cone::Angular(theorem_cone(n, gap.distance, gamma)?)
        }
    };
    let x: Vec<f64> = alpha.iter().map(|&a| a as f64 / m as f64).collect();
    if hull_membership(s, &cone, &x, opts.arith, opts.resolution)? != HullMembership::Outside {
        return Err(Error::InHull {
            alpha: alpha.to_vec(),
        });
    }
    let alpha_f: Vec<f64> = alpha.iter().map(|&a| a as f64).collect();
    let violation_at = |t: &[f64]| dot(&alpha_f, t) - m as f64 * s.support_unchecked(t);

    let best = hull_sup(s, &cone, &x, opts.resolution)?.direction;
    let mut tau = best.clone();
    let mut angle = NUDGE;
    while angle > 1e-12 {
        let cand = nudge_toward_axis(&best, angle);
        if violation_at(&cand) > 0.0 && cone.contains(&cand) {
            tau = cand;
            break;
        }
        angle /= 2.0;
    }
    let violation = violation_at(&tau);
    let one_tau: f64 = tau.iter().sum();
    let epsilon = 0.5 * (violation + one_tau - gamma);
    if !(violation > 0.0 && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "no admissible direction: violation {violation:.3e}, <1,tau> {one_tau:.3e}"
        )));
    }

    // −<𝟙,τ> + mφ_S(ξ) − <α,ξ> + (γ+ε)|ξ| is convex, so checking the corners of K suffices
    let h = |xi: &[f64]| {
        -one_tau + m as f64 * s.support_unchecked(xi) - dot(&alpha_f, xi)
            + (gamma + epsilon) * dot(xi, xi).sqrt()
    };
    let corners = integer_box(&vec![0; n], &vec![1; n]);
    let mut delta = 1.0;
    let sigma = loop {
        let sigma: Vec<f64> = tau.iter().map(|t| t - delta).collect();
        let ok = sigma.iter().any(|&v| v != 0.0)
            && corners.iter().all(|c| {
                let xi: Vec<f64> = (0..n).map(|j| if c[j] == 0 { sigma[j] } else { tau[j] }).collect();
                h(&xi) < 0.0
            });
        if ok {
            break sigma;
        }
        delta /= 2.0;
        if delta < 1e-12 {
            return Err(Error::InvalidArgument("no window sigma < tau passes the corner check".into()));
        }
    };
    let window = CoefficientWindow::new(sigma.clone(), tau.clone())?;

    let ratio = 10f64.powf(1.0 / opts.per_decade as f64);
    let mut samples = Vec::new();
    let mut t = opts.t_start;
    let mut below_at: Option<usize> = None;
    while t <= opts.t_max {
        let lb = log_coefficient_bound(opts.norm, &w, alpha, &window, t)?;
        samples.push(DecaySample {
            t,
            bound: lb.exp(),
            log_bound: lb,
        });
        if below_at.is_none() && lb.exp() < opts.threshold {
            below_at = Some(samples.len() - 1);
        }
        if let Some(i) = below_at {
            if samples.len() - 1 >= i + opts.per_decade {
                break;
            }
        }
        t *= ratio;
    }
    let tail = &samples[samples.len().saturating_sub(opts.per_decade + 1)..];
    let final_decade_monotone = tail.windows(2).all(|p| p[1].log_bound < p[0].log_bound);
    Ok(DecayCurve {
        alpha: alpha.to_vec(),
        tau,
        sigma,
        epsilon,
        violation,
        below_threshold: below_at.is_some(),
        final_decade_monotone,
        samples,
        note: "epsilon = (violation + <1,tau> - gamma)/2, taking gamma (not its infimum gamma_0) in the interiority condition".into(),
    })
}
