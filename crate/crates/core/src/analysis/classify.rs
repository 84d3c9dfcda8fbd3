use serde::Serialize;

use crate::cones::{hull_membership, hull_polygon_2d, is_gamma_convex, theorem_cone, Cone, HullMembership, Resolution};
use crate::error::Result;
use crate::exec::{par_map, Execution};
use crate::geometry::{is_lower_set, lattice_gap, lattice_points, project_to_polytope, Arith, LatticeGap, PolyhedralCone, Polytope};
use crate::integrals::{finiteness_lp, FinitenessVerdict, Status, WeightSpec};

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// `None` builds the theorem cone from `d_m` and `γ`.
    pub cone: Option<Cone>,
    /// Lattice units beyond the bounding box of `m·S`; `None` picks the default.
    pub margin: Option<f64>,
    pub arith: Arith,
    pub resolution: Resolution,
    pub exec: Execution,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            cone: None,
            margin: None,
            arith: Arith::Auto,
            resolution: Resolution::default(),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentClassification {
    pub alpha: Vec<i64>,
    pub in_ms: bool,
    pub hull: HullMembership,
    pub finite: FinitenessVerdict,
    /// Euclidean distance from `α` to `m·S`.
    pub distance: f64,
}

impl ExponentClassification {
    /// `None` for boundary verdicts.
    pub fn in_hull(&self) -> Option<bool> {
        match self.hull {
            HullMembership::Inside => Some(true),
            HullMembership::Outside => Some(false),
            HullMembership::Boundary(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite.status == Status::Finite
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub dim: usize,
    pub m: u64,
    pub gamma: f64,
    pub gap: LatticeGap,
    pub cone: Cone,
    pub margin: f64,
    pub rows: Vec<ExponentClassification>,
}

/// Classification margin: 2 lattice units beyond the box of `m·Ŝ_Γ` when the
/// planar hull is available, otherwise `d_m + 2` beyond the box of `m·S`.
pub fn default_margin(s: &Polytope, m: u64, cone: &Cone, d_m: f64) -> f64 {
    if s.dim() == 2 {
        if let Ok(region) = hull_polygon_2d(s, cone) {
            if region.polygon.is_some() {
                let hb = region.bbox_max();
                let sb = s.bbox_max();
                let grow = hb
                    .iter()
                    .zip(&sb)
                    .map(|(h, b)| m as f64 * (h - b))
                    .fold(0.0, f64::max);
                return grow + 2.0;
            }
        }
    }
    d_m + 2.0
}

/// Tags every lattice exponent near `m·S` with membership in `m·S`, in
/// `m·Ŝ_Γ`, and integrability of `|z^α|² e^{−ψ}`. Rows are sorted lexicographically.
pub fn classify(s: &Polytope, m: u64, gamma: f64, opts: &ClassifyOptions) -> Result<Classification> {
    let w = WeightSpec::new(s.clone(), m, gamma)?;
    let gap = lattice_gap(s, m, opts.arith)?;
    let cone = match &opts.cone {
        Some(c) => c.clone(),
        None => Cone::Angular(theorem_cone(s.dim(), gap.distance, gamma)?),
    };
    let margin = opts
        .margin
        .unwrap_or_else(|| default_margin(s, m, &cone, gap.distance));
    let points = lattice_points(s, m, margin, opts.arith)?;
    let res = Resolution {
        exec: Execution::Sequential,
        ..opts.resolution
    };
    let rows = par_map(opts.exec, &points, |p| -> Result<ExponentClassification> {
        let x: Vec<f64> = p.alpha.iter().map(|&a| a as f64 / m as f64).collect();
        let hull = if p.inside {
            HullMembership::Inside
        } else {
            hull_membership(s, &cone, &x, opts.arith, res)?
        };
        let distance = if p.inside {
            0.0
        } else {
            m as f64 * project_to_polytope(s, &x)?.distance
        };
        Ok(ExponentClassification {
            alpha: p.alpha.clone(),
            in_ms: p.inside,
            hull,
            finite: finiteness_lp(&w, &p.alpha)?,
            distance,
        })
    });
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    Ok(Classification {
        dim: s.dim(),
        m,
        gamma,
        gap,
        cone,
        margin,
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub pass: bool,
    pub dim: usize,
    pub m: u64,
    pub gamma: f64,
    pub d_m: f64,
    pub gap_witness: Vec<i64>,
    /// Half-angle of Γ in radians (angular cones only).
    pub half_angle: Option<f64>,
    pub rows: usize,
    pub finite: usize,
    pub marginal: usize,
    /// Finite exponents outside `m·S` (the hull gain).
    pub finite_outside_ms: Vec<Vec<i64>>,
    /// Finite exponents certified outside `m·Ŝ_Γ`.
    pub violations: Vec<ExponentClassification>,
    /// Rows whose hull verdict is a boundary tie.
    pub boundary: Vec<ExponentClassification>,
}

/// Checks `Finite ⇒ α ∈ m·Ŝ_Γ` on every classified exponent.
pub fn verify_theorem(s: &Polytope, m: u64, gamma: f64, opts: &ClassifyOptions) -> Result<TheoremReport> {
    let table = classify(s, m, gamma, opts)?;
    Ok(theorem_report(&table))
}

pub fn theorem_report(table: &Classification) -> TheoremReport {
    let violations: Vec<ExponentClassification> = table
        .rows
        .iter()
        .filter(|r| r.is_finite() && r.in_hull() == Some(false))
        .cloned()
        .collect();
    let boundary: Vec<ExponentClassification> = table
        .rows
        .iter()
        .filter(|r| r.in_hull().is_none())
        .cloned()
        .collect();
    TheoremReport {
        pass: violations.is_empty(),
        dim: table.dim,
        m: table.m,
        gamma: table.gamma,
        d_m: table.gap.distance,
        gap_witness: table.gap.witness.clone(),
        half_angle: match &table.cone {
            Cone::Angular(a) => Some(a.half_angle),
            Cone::Polyhedral(_) => None,
        },
        rows: table.rows.len(),
        finite: table.rows.iter().filter(|r| r.is_finite()).count(),
        marginal: table
            .rows
            .iter()
            .filter(|r| r.finite.status == Status::Marginal)
            .count(),
        finite_outside_ms: table
            .rows
            .iter()
            .filter(|r| r.is_finite() && !r.in_ms)
            .map(|r| r.alpha.clone())
            .collect(),
        violations,
        boundary,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryReport {
    /// `S` is a lower set.
    pub lower_set: bool,
    /// `S = Ŝ_Λ` for the supplied `Λ`; `None` when no `Λ` was given or its rays fail `<𝟙, r> >= 0`.
    pub lambda_convex: Option<bool>,
    pub lambda_note: Option<String>,
    /// `m·S` and `m·Ŝ_Γ` have the same lattice points.
    pub same_lattice_points: bool,
    /// Whether any case applies.
    pub applies: bool,
    /// `Finite ⇒ α ∈ m·S` on every row; `None` when no case applies.
    pub strengthened_pass: Option<bool>,
    pub violations: Vec<Vec<i64>>,
    pub theorem: TheoremReport,
}

pub fn verify_corollaries(
    s: &Polytope,
    m: u64,
    gamma: f64,
    lambda: Option<&PolyhedralCone>,
    opts: &ClassifyOptions,
) -> Result<CorollaryReport> {
    let table = classify(s, m, gamma, opts)?;
    let lower_set = is_lower_set(s, opts.arith)?;
    let (lambda_convex, lambda_note) = match lambda {
        None => (None, None),
        Some(l) => {
            if l.rays().iter().any(|r| r.iter().sum::<f64>() < -1e-12) {
                (None, Some("a ray of Λ has <𝟙, r> < 0; case (ii) inapplicable".to_string()))
            } else {
                (Some(is_gamma_convex(s, &Cone::Polyhedral(l.clone()), opts.arith)?), None)
            }
        }
    };
    let same_lattice_points = table
        .rows
        .iter()
        .all(|r| r.in_ms || r.in_hull() == Some(false));
    let applies = lower_set || lambda_convex == Some(true) || same_lattice_points;
    let violations: Vec<Vec<i64>> = table
        .rows
        .iter()
        .filter(|r| r.is_finite() && !r.in_ms)
        .map(|r| r.alpha.clone())
        .collect();
    Ok(CorollaryReport {
        lower_set,
        lambda_convex,
        lambda_note,
        same_lattice_points,
        applies,
        strengthened_pass: applies.then_some(violations.is_empty()),
        violations: if applies { violations } else { Vec::new() },
        theorem: theorem_report(&table),
    })
}
