use num_rational::BigRational;
use serde::Serialize;

use crate::cones::{hull_membership, theorem_cone, Cone, HullMembership, Resolution};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Scalar};
use crate::geometry::shapes::quadrilateral;
use crate::geometry::{lattice_gap, Arith, Polytope};
use crate::integrals::{finiteness_lp, monomial_norm_closed_form, quadrature_norm, FinitenessVerdict, QuadratureBudget, QuadratureNorm, WeightSpec};

/// The quadrilateral `ch{(0,0), (a,0), (b,1−b), (0,1)}` with `m` and the monomial `z_1^k`.
#[derive(Debug, Clone)]
pub struct Example41Params {
    pub m: u64,
    pub a: BigRational,
    pub b: BigRational,
    pub k: i64,
}

impl Example41Params {
    pub fn parse(m: u64, a: &str, b: &str, k: i64) -> Result<Self> {
        Ok(Self {
            m,
            a: parse_rational(a)?,
            b: parse_rational(b)?,
            k,
        })
    }

    /// Checks every standing inequality, naming the first one that fails.
    pub fn validate(&self) -> Result<()> {
        let m = BigRational::from_integer(self.m.into());
        let one = BigRational::one();
        let fail = |msg: &str| Err(Error::ParameterConstraint(msg.to_string()));
        if self.m < 4 {
            return fail("m ≥ 4 required");
        }
        if !(self.a > BigRational::zero() && self.a < one.clone() / m.clone()) {
            return fail("0 < a < 1/m required");
        }
        if !(self.a < self.b && self.b < one) {
            return fail("a < b < 1 required");
        }
        if !(m.clone() * (one.clone() - self.b.clone()) < one) {
            return fail("m(1−b) < 1 required");
        }
        let ratio = (self.b.clone() - self.a.clone()) / (one.clone() - self.b.clone());
        let two = BigRational::from_integer(2.into());
        if !(ratio > m.clone() - two - self.a.clone() * m) {
            return fail("(b−a)/(1−b) > m−2−am required");
        }
        if !(1 <= self.k && self.k <= self.m as i64 - 3) {
            return fail("1 ≤ k ≤ m−3 required");
        }
        Ok(())
    }

    pub fn polytope(&self) -> Result<Polytope> {
        quadrilateral(&self.a, &self.b)
    }
}

/// The four normal-cone integrals of `e^{2(k+1)ξ_1 + 2ξ_2 − 2mφ_S(ξ)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellTerms {
    pub origin: f64,
    pub a0: f64,
    pub b1b: f64,
    pub y_axis: f64,
}

impl CellTerms {
    pub fn sum(&self) -> f64 {
        self.origin + self.a0 + self.b1b + self.y_axis
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.origin, self.a0, self.b1b, self.y_axis]
    }
}

/// Iterated-integral evaluation of the four cells.
///
/// With `r = (b−a)/(1−b)`, `p = 1 − m(1−b)` and `D = r + ma − 1 − k`:
/// `1/(4(k+1))`, `1/(4D)`, `(1/(m−2−k) − 1/D)/(4p)` and `1/(4(k+1)(m−2−k))`.
pub fn formula_terms(p: &Example41Params) -> CellTerms {
    let (m, a, b, k) = (p.m as f64, p.a.to_f64(), p.b.to_f64(), p.k as f64);
    let r = (b - a) / (1.0 - b);
    let q = 1.0 - m * (1.0 - b);
    let d = r + m * a - 1.0 - k;
    CellTerms {
        origin: 1.0 / (4.0 * (k + 1.0)),
        a0: 1.0 / (4.0 * d),
        b1b: (1.0 / (m - 2.0 - k) - 1.0 / d) / (4.0 * q),
        y_axis: 1.0 / (4.0 * (k + 1.0) * (m - 2.0 - k)),
    }
}

/// The `(b, 1−b)` term with `+ 1/D` in place of `− 1/D`.
pub fn plus_variant_b1b(p: &Example41Params) -> f64 {
    let (m, a, b, k) = (p.m as f64, p.a.to_f64(), p.b.to_f64(), p.k as f64);
    let r = (b - a) / (1.0 - b);
    let d = r + m * a - 1.0 - k;
    (1.0 / (m - 2.0 - k) + 1.0 / d) / (4.0 * (1.0 - m * (1.0 - b)))
}

#[derive(Debug, Clone, Serialize)]
pub struct Example41Report {
    pub m: u64,
    pub a: String,
    pub b: String,
    pub k: i64,
    pub formula: CellTerms,
    pub fan: CellTerms,
    /// Largest relative gap between `formula` and `fan`.
    pub max_rel_diff: f64,
    /// `(2π)² Σ cells`: the squared norm of `z_1^k`.
    pub squared_norm: f64,
    pub quadrature: QuadratureNorm,
    pub quadrature_rel_err: f64,
    pub alpha: Vec<i64>,
    pub in_ms: bool,
    pub finite: FinitenessVerdict,
    pub d_m: f64,
    pub hull: HullMembership,
}

pub fn example41(p: &Example41Params, budget: QuadratureBudget) -> Result<Example41Report> {
    p.validate()?;
    let s = p.polytope()?;
    let w = WeightSpec::new(s.clone(), p.m, 0.0)?;
    let alpha = vec![p.k, 0];
    let cf = monomial_norm_closed_form(&w, &alpha)?;
    let pick = |x: f64, y: f64| -> Result<f64> {
        cf.cells
            .iter()
            .find(|c| (c.vertex_coords[0] - x).abs() < 1e-12 && (c.vertex_coords[1] - y).abs() < 1e-12)
            .map(|c| c.value)
            .ok_or_else(|| Error::InvalidArgument(format!("no fan cell at ({x}, {y})")))
    };
    let (a, b) = (p.a.to_f64(), p.b.to_f64());
    let fan = CellTerms {
        origin: pick(0.0, 0.0)?,
        a0: pick(a, 0.0)?,
        b1b: pick(b, 1.0 - b)?,
        y_axis: pick(0.0, 1.0)?,
    };
    let formula = formula_terms(p);
    let max_rel_diff = formula
        .as_array()
        .iter()
        .zip(fan.as_array())
        .map(|(f, g)| ((f - g) / f).abs())
        .fold(0.0, f64::max);
    let quadrature = quadrature_norm(&w, &alpha, budget)?;
    let squared_norm = cf.value;
    let gap = lattice_gap(&s, p.m, Arith::Exact)?;
    let cone = Cone::Angular(theorem_cone(2, gap.distance, 0.0)?);
    let x = [p.k as f64 / p.m as f64, 0.0];
    Ok(Example41Report {
        m: p.m,
        a: format_rational(&p.a),
        b: format_rational(&p.b),
        k: p.k,
        formula,
        fan,
        max_rel_diff,
        squared_norm,
        quadrature_rel_err: ((quadrature.value - squared_norm) / squared_norm).abs(),
        quadrature,
        in_ms: s.contains_lattice(&alpha, p.m, Arith::Exact)?,
        finite: finiteness_lp(&w, &alpha)?,
        d_m: gap.distance,
        hull: hull_membership(&s, &cone, &x, Arith::Exact, Resolution::default())?,
        alpha,
    })
}
