use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{par_map, Execution};
use crate::integrals::finiteness::finiteness_lp;
use crate::integrals::weight::{GammaTerm, WeightSpec};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

/// 15-point Kronrod rule on `[a, b]` for an integrand returning
/// `(value, carried error)`; the carried error is integrated alongside.
fn gk15<F>(f: &F, a: f64, b: f64, exec: Execution) -> (Segment, f64)
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut xs = Vec::with_capacity(15);
    xs.push(c);
    for &x in &XGK[..7] {
        xs.push(c - h * x);
        xs.push(c + h * x);
    }
    let fx = par_map(exec, &xs, |&x| f(x));
    let fc = fx[0];
    let mut kron = WGK[7] * fc.0;
    let mut gauss = WG[3] * fc.0;
    let mut carried = WGK[7] * fc.1;
    let mut pairs = [(0.0, 0.0); 7];
    for i in 0..7 {
        let (lo, hi) = (fx[1 + 2 * i], fx[2 + 2 * i]);
        pairs[i] = (lo.0, hi.0);
        kron += WGK[i] * (lo.0 + hi.0);
        carried += WGK[i] * (lo.1 + hi.1);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (lo.0 + hi.0);
        }
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[7] * (fc.0 - mean).abs();
    for i in 0..7 {
        asc += WGK[i] * ((pairs[i].0 - mean).abs() + (pairs[i].1 - mean).abs());
    }
    let value = kron * h;
    let asc = asc * h.abs();
    let mut err = ((kron - gauss) * h).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    (Segment { a, b, value, err }, carried * h.abs())
}

/// Adaptive Gauss–Kronrod over `[a, b]` split first at `breaks`.
///
/// Returns `(value, error)`, where the error includes the integral of the
/// integrand's own carried error.
pub fn integrate_adaptive<F>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
    exec: Execution,
) -> (f64, f64)
where
    F: Fn(f64) -> (f64, f64) + Sync,
{
    let mut knots = vec![a];
    knots.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    knots.push(b);
    let mut segs: Vec<(Segment, f64)> = knots
        .windows(2)
        .map(|w| gk15(f, w[0], w[1], exec))
        .collect();
    loop {
        let value: f64 = segs.iter().map(|s| s.0.value).sum();
        let err: f64 = segs.iter().map(|s| s.0.err).sum();
        let carried: f64 = segs.iter().map(|s| s.1).sum();
        if err <= abs_tol.max(rel_tol * value.abs()) || segs.len() >= max_segments {
            return (value, err + carried);
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .0.err.total_cmp(&y.1 .0.err))
            .expect("nonempty");
        let (s, _) = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // interval can no longer be split in floating point
            return (value, err + carried);
        }
        segs.push(gk15(f, s.a, mid, exec));
        segs.push(gk15(f, mid, s.b, exec));
    }
}

/// Iterated adaptive quadrature of `f` over the box `[lo, hi]`, splitting
/// every coordinate at `breaks`. The outermost level runs on `exec`.
pub fn integrate_box<F>(
    f: &F,
    lo: &[f64],
    hi: &[f64],
    breaks: &[f64],
    rel_tol: f64,
    exec: Execution,
) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    integrate_box_with(f, lo, hi, breaks, &|_: &[f64]| Vec::new(), rel_tol, exec)
}

/// As [`integrate_box`], with extra breakpoints for the innermost coordinate
/// computed from the outer coordinates (kinks of a piecewise-smooth `f`).
pub fn integrate_box_with<F, B>(
    f: &F,
    lo: &[f64],
    hi: &[f64],
    breaks: &[f64],
    inner_breaks: &B,
    rel_tol: f64,
    exec: Execution,
) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
    B: Fn(&[f64]) -> Vec<f64> + Sync,
{
    let mut prefix = Vec::with_capacity(lo.len());
    let level = Level {
        f,
        inner_breaks,
        lo,
        hi,
        breaks,
    };
    level.integrate(rel_tol, 0.0, &mut prefix, exec)
}

struct Level<'a, F, B> {
    f: &'a F,
    inner_breaks: &'a B,
    lo: &'a [f64],
    hi: &'a [f64],
    breaks: &'a [f64],
}

impl<F, B> Level<'_, F, B>
where
    F: Fn(&[f64]) -> f64 + Sync,
    B: Fn(&[f64]) -> Vec<f64> + Sync,
{
    fn integrate(&self, rel_tol: f64, abs_tol: f64, prefix: &mut Vec<f64>, exec: Execution) -> (f64, f64) {
        let k = prefix.len();
        let last = k + 1 == self.lo.len();
        let mut breaks = self.breaks.to_vec();
        if last {
            breaks.extend((self.inner_breaks)(prefix));
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
        }
        let max_segments = if last { 400 } else { 200 };
        let inner_rel = rel_tol * 0.1;
        let inner_abs = abs_tol * 0.1 / (self.hi[k] - self.lo[k]).max(1.0);
        let base = prefix.clone();
        let g = |x: f64| {
            let mut p = base.clone();
            p.push(x);
            if last {
                ((self.f)(&p), 0.0)
            } else {
                self.integrate(inner_rel, inner_abs, &mut p, Execution::Sequential)
            }
        };
        integrate_adaptive(&g, self.lo[k], self.hi[k], &breaks, abs_tol, rel_tol, max_segments, exec)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureBudget {
    pub rel_tol: f64,
    pub gamma_term: GammaTerm,
    pub exec: Execution,
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            gamma_term: GammaTerm::ExactLog,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureNorm {
    /// `(2π)ⁿ ∫ e^{E_α}`.
    pub value: f64,
    /// Quadrature error plus tail bound, scaled by `(2π)ⁿ`.
    pub error: f64,
    pub tail_bound: f64,
    pub radius: f64,
}

/// `∫_{‖ξ‖∞ > R} e^{F‖ξ‖∞} dξ = n·2ⁿ·Γ(n, |F|R) / |F|ⁿ` for `F < 0`.
pub fn cube_tail(n: usize, face_max: f64, radius: f64) -> f64 {
    let rate = -face_max;
    let x = rate * radius;
    // Γ(n, x) = (n−1)! e^{−x} Σ_{k<n} x^k / k!
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..n {
        term *= x / k as f64;
        sum += term;
    }
    let fact: f64 = (1..n).map(|k| k as f64).product();
    n as f64 * 2f64.powi(n as i32) * fact * (-x).exp() * sum / rate.powi(n as i32)
}

/// Values of the last coordinate where two vertices tie in `φ_S`, or where the
/// max-term switches, given the other coordinates.
pub(crate) fn tie_points(w: &WeightSpec, term: GammaTerm, prefix: &[f64]) -> Vec<f64> {
    let k = prefix.len();
    let verts = w.s.vertices();
    let mut out = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let dl = verts[i][k] - verts[j][k];
            if dl.abs() > 1e-14 {
                let rest: f64 = (0..k).map(|c| (verts[i][c] - verts[j][c]) * prefix[c]).sum();
                out.push(-rest / dl);
            }
        }
    }
    if w.gamma > 0.0 && term == GammaTerm::MaxComparison {
        out.extend_from_slice(prefix);
    }
    out
}

/// Squared weighted norm of `z^α` by truncated iterated quadrature.
pub fn quadrature_norm(w: &WeightSpec, alpha: &[i64], budget: QuadratureBudget) -> Result<QuadratureNorm> {
    let verdict = finiteness_lp(w, alpha)?;
    if verdict.max >= -verdict.margin {
        return Err(Error::TailUnavailable {
            face_max: verdict.max,
        });
    }
    let n = w.dim();
    let term = budget.gamma_term;
    let integrand = |xi: &[f64]| w.exponent_with(alpha, xi, term).exp();

    let kinks = |prefix: &[f64]| tie_points(w, term, prefix);
    let unit_lo = vec![-1.0; n];
    let unit_hi = vec![1.0; n];
    let (guess, _) = integrate_box_with(&integrand, &unit_lo, &unit_hi, &[0.0], &kinks, 1e-4, budget.exec);
    let target = 0.1 * budget.rel_tol * guess.max(f64::MIN_POSITIVE);
    let mut radius = 1.0;
    while cube_tail(n, verdict.max, radius) > target && radius < 1e6 {
        radius *= 1.25;
    }
    let lo = vec![-radius; n];
    let hi = vec![radius; n];
    let (value, err) = integrate_box_with(&integrand, &lo, &hi, &[0.0], &kinks, budget.rel_tol, budget.exec);
    let tail = cube_tail(n, verdict.max, radius);
    let scale = (2.0 * PI).powi(n as i32);
    Ok(QuadratureNorm {
        value: scale * value,
        error: scale * (err + tail),
        tail_bound: scale * tail,
        radius,
    })
}
