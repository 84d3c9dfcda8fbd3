//! JSON input formats for polytopes, cones and polynomials.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};
use slelong_core::analysis::Polynomial;
use slelong_core::cones::{AngularCone, Cone};
use slelong_core::field::{format_rational, parse_rational};
use slelong_core::geometry::{PolyhedralCone, Polytope};

use crate::CliError;

enum Coord {
    Exact(BigRational),
    Float(f64),
}

fn coord(v: &Value, at: &str) -> Result<Coord, CliError> {
    match v {
        Value::String(s) => parse_rational(s)
            .map(Coord::Exact)
            .map_err(|e| CliError::input(at, e.to_string())),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Coord::Exact(BigRational::from_integer(i.into())))
            } else {
                Ok(Coord::Float(n.as_f64().unwrap_or(f64::NAN)))
            }
        }
        _ => Err(CliError::input(at, "expected a number or a rational string")),
    }
}

/// Parses `{"dim": n, "vertices": [[...], ...]}`; coordinates may be JSON
/// numbers or strings like `"3/10"`. The convex hull of the listed points is
/// taken, exactly unless some coordinate is a non-integer JSON number.
pub fn parse_polytope(text: &str) -> Result<Polytope, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::input("polytope", e.to_string()))?;
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::input("vertices", "missing or not an array"))?;
    if verts.is_empty() {
        return Err(CliError::input("vertices", "empty"));
    }
    let dim = match v.get("dim") {
        Some(d) => d
            .as_u64()
            .ok_or_else(|| CliError::input("dim", "expected a positive integer"))? as usize,
        None => verts[0].as_array().map_or(0, Vec::len),
    };
    if dim == 0 {
        return Err(CliError::input("dim", "must be positive"));
    }
    let mut rows = Vec::with_capacity(verts.len());
    for (i, row) in verts.iter().enumerate() {
        let at = format!("vertices[{i}]");
        let cs = row.as_array().ok_or_else(|| CliError::input(&at, "expected an array"))?;
        if cs.len() != dim {
            return Err(CliError::input(&at, format!("expected {dim} coordinates, got {}", cs.len())));
        }
        let parsed = cs
            .iter()
            .enumerate()
            .map(|(j, c)| coord(c, &format!("{at}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    let exact = rows.iter().flatten().all(|c| matches!(c, Coord::Exact(_)));
    let built = if exact {
        let pts = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| match c {
                        Coord::Exact(q) => q,
                        Coord::Float(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        Polytope::hull_of_rational(dim, pts)
    } else {
        let pts = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| match c {
                        Coord::Exact(q) => slelong_core::field::Scalar::to_f64(&q),
                        Coord::Float(x) => x,
                    })
                    .collect()
            })
            .collect();
        Polytope::hull_of(dim, pts)
    };
    built.map_err(|e| CliError::input("vertices", e.to_string()))
}

/// Rational inputs are written as strings so that they re-parse exactly.
pub fn polytope_json(s: &Polytope) -> Value {
    let vertices: Vec<Value> = if s.is_rational_input() {
        s.exact_vertices()
            .iter()
            .map(|v| Value::from(v.iter().map(format_rational).collect::<Vec<_>>()))
            .collect()
    } else {
        s.vertices().iter().map(|v| json!(v)).collect()
    };
    json!({ "dim": s.dim(), "vertices": vertices })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeFile {
    half_angle: Option<f64>,
    rays: Option<Vec<Vec<f64>>>,
    dim: Option<usize>,
}

/// `{"half_angle": θ, "dim": n}` for an angular cone around `𝟙`, or
/// `{"rays": [[...], ...]}` for a polyhedral one.
pub fn parse_cone(text: &str, dim: usize) -> Result<Cone, CliError> {
    let f: ConeFile = serde_json::from_str(text).map_err(|e| CliError::input("cone", e.to_string()))?;
    match (f.half_angle, f.rays) {
        (Some(t), None) => {
            let d = f.dim.unwrap_or(dim);
            AngularCone::new(d, t)
                .map(Cone::Angular)
                .map_err(|e| CliError::input("half_angle", e.to_string()))
        }
        (None, Some(rays)) => {
            let d = rays.first().map_or(dim, Vec::len);
            PolyhedralCone::new(d, rays)
                .map(Cone::Polyhedral)
                .map_err(|e| CliError::input("rays", e.to_string()))
        }
        _ => Err(CliError::input("cone", "give exactly one of half_angle or rays")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    alpha: Vec<i64>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialFile {
    dim: usize,
    terms: Vec<TermFile>,
}

/// `{"dim": n, "terms": [{"alpha": [..], "re": .., "im": ..}, ...]}`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, CliError> {
    let f: PolynomialFile = serde_json::from_str(text).map_err(|e| CliError::input("polynomial", e.to_string()))?;
    let mut p = Polynomial::new(f.dim);
    for (i, t) in f.terms.into_iter().enumerate() {
        if t.alpha.len() != f.dim || t.alpha.iter().any(|&a| a < 0) {
            return Err(CliError::input(
                &format!("terms[{i}].alpha"),
                format!("expected {} nonnegative exponents", f.dim),
            ));
        }
        p.add_term(t.alpha, Complex64::new(t.re, t.im));
    }
    Ok(p)
}

pub fn parse_list<T: std::str::FromStr>(text: &str, field: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::input(field, format!("cannot parse {s:?}")))
        })
        .collect()
}
