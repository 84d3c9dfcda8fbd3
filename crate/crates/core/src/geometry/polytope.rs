use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{check_dim, Error, Result};
use crate::field::{dot, rational_from_f64, Scalar};
use crate::geometry::hrep::HRep;

/// Arithmetic used for discrete membership decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arith {
    /// Exact when the polytope was given by rational coordinates.
    #[default]
    Auto,
    /// Always exact (binary floats are converted to their exact rational value).
    Exact,
    Float,
}

/// Vertex-listed compact convex set `S` in the nonnegative orthant with `0 ∈ S`.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    exact: Vec<Vec<BigRational>>,
    rational_input: bool,
    hrep: HRep<f64>,
    exact_hrep: HRep<BigRational>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.exact == other.exact
    }
}

impl Polytope {
    /// Builds a polytope from an already reduced list of rational vertices.
    pub fn from_rational(dim: usize, vertices: Vec<Vec<BigRational>>) -> Result<Self> {
        let p = Self::assemble(dim, vertices, true)?;
        p.check_reduced()?;
        Ok(p)
    }

    /// Builds a polytope from an already reduced list of float vertices.
    pub fn new(dim: usize, vertices: Vec<Vec<f64>>) -> Result<Self> {
        let exact = to_exact(&vertices)?;
        let p = Self::assemble(dim, exact, false)?;
        p.check_reduced()?;
        Ok(p)
    }

    /// Convex hull of arbitrary rational points (duplicates and interior points dropped).
    pub fn hull_of_rational(dim: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut unique: Vec<Vec<BigRational>> = Vec::new();
        for p in points {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        let full = Self::assemble(dim, unique, true)?;
        let keep: Vec<Vec<BigRational>> = full
            .exact
            .iter()
            .filter(|v| full.exact_hrep.is_vertex(v, dim))
            .cloned()
            .collect();
        Self::assemble(dim, keep, true)
    }

    pub fn hull_of(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        let mut p = Self::hull_of_rational(dim, to_exact(&points)?)?;
        p.rational_input = false;
        Ok(p)
    }

    fn assemble(dim: usize, exact: Vec<Vec<BigRational>>, rational_input: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be at least 1".into()));
        }
        if exact.is_empty() {
            return Err(Error::InvalidPolytope("at least one vertex is required".into()));
        }
        for (i, v) in exact.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if v.iter().any(|c| c.sign() == Ordering::Less) {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {i} has a negative coordinate; S must lie in the nonnegative orthant"
                )));
            }
        }
        let exact_hrep = HRep::from_points(&exact, dim);
        let vertices: Vec<Vec<f64>> = exact
            .iter()
            .map(|v| v.iter().map(Scalar::to_f64).collect())
            .collect();
        let hrep = hrep_to_f64(&exact_hrep);
        let p = Polytope {
            dim,
            vertices,
            exact,
            rational_input,
            hrep,
            exact_hrep,
        };
        let origin = vec![<BigRational as Scalar>::zero(); dim];
        if p.exact_hrep.violation(&origin).sign() == Ordering::Greater {
            return Err(Error::InvalidPolytope("the origin must belong to S".into()));
        }
        Ok(p)
    }

    fn check_reduced(&self) -> Result<()> {
        for (i, v) in self.exact.iter().enumerate() {
            if self.exact[..i].contains(v) {
                return Err(Error::InvalidPolytope(format!("vertex {i} is repeated")));
            }
            if !self.exact_hrep.is_vertex(v, self.dim) {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {i} is not an extreme point"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn exact_vertices(&self) -> &[Vec<BigRational>] {
        &self.exact
    }

    pub fn is_rational_input(&self) -> bool {
        self.rational_input
    }

    pub fn hrep(&self) -> &HRep<f64> {
        &self.hrep
    }

    pub fn exact_hrep(&self) -> &HRep<BigRational> {
        &self.exact_hrep
    }

    pub fn affine_dim(&self) -> usize {
        self.exact_hrep.affine_dim(self.dim)
    }

    /// `m·S`, exact.
    pub fn scaled(&self, m: u64) -> Polytope {
        let f = BigRational::from_i64(m as i64);
        let exact: Vec<Vec<BigRational>> = self
            .exact
            .iter()
            .map(|v| v.iter().map(|c| c * &f).collect())
            .collect();
        Self::assemble(self.dim, exact, self.rational_input)
            .expect("scaling preserves validity")
    }

    pub fn max_vertex_norm(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|c| c * c).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// Upper corner of the bounding box (the lower corner is the origin).
    pub fn bbox_max(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|j| self.vertices.iter().map(|v| v[j]).fold(0.0, f64::max))
            .collect()
    }

    /// `φ_S(ξ) = max_s <s, ξ>`.
    pub fn support_value(&self, xi: &[f64]) -> Result<f64> {
        check_dim(self.dim, xi.len())?;
        Ok(self.support_unchecked(xi))
    }

    pub(crate) fn support_unchecked(&self, xi: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| dot(v, xi))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn support_value_exact(&self, xi: &[BigRational]) -> Result<BigRational> {
        check_dim(self.dim, xi.len())?;
        let mut best: Option<BigRational> = None;
        for v in &self.exact {
            let val = dot(v, xi);
            if best.as_ref().is_none_or(|b| &val > b) {
                best = Some(val);
            }
        }
        Ok(best.expect("at least one vertex"))
    }

    /// Index of the maximizing vertex, ties broken by the lower index.
    pub fn support_argmax(&self, xi: &[f64]) -> usize {
        let mut best = 0;
        let mut best_val = f64::NEG_INFINITY;
        for (i, v) in self.vertices.iter().enumerate() {
            let val = dot(v, xi);
            if val > best_val + 1e-12 * (1.0 + best_val.abs()) {
                best = i;
                best_val = val;
            }
        }
        best
    }

    /// `H_S(z)`, with the upper-limit extension on coordinate hyperplanes.
    pub fn log_support(&self, z: &[Complex64]) -> Result<f64> {
        check_dim(self.dim, z.len())?;
        let logs: Vec<f64> = z.iter().map(|w| w.norm().ln()).collect();
        let mut best = f64::NEG_INFINITY;
        for v in &self.vertices {
            let mut acc = 0.0;
            for (s, l) in v.iter().zip(&logs) {
                // (-inf)·0 = 0
                if *s != 0.0 {
                    acc += s * l;
                }
            }
            best = best.max(acc);
        }
        Ok(best)
    }

    fn exact_mode(&self, arith: Arith) -> bool {
        match arith {
            Arith::Auto => self.rational_input,
            Arith::Exact => true,
            Arith::Float => false,
        }
    }

    /// Membership of a floating-point query. `Auto` treats `x` as an
    /// approximation and uses the tolerant test; `Exact` takes `x` at its
    /// exact binary value.
    pub fn contains(&self, x: &[f64], arith: Arith) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        if arith == Arith::Exact {
            let q = x.iter().map(|&c| rational_from_f64(c)).collect::<Result<Vec<_>>>()?;
            Ok(self.contains_exact(&q))
        } else {
            let scale = 1.0 + self.max_vertex_norm();
            Ok(self.hrep.violation(x) <= 1e-9 * scale)
        }
    }

    pub fn contains_exact(&self, x: &[BigRational]) -> bool {
        self.exact_hrep.violation(x).sign() != Ordering::Greater
    }

    /// Whether the lattice point `alpha` lies in `m·S`.
    pub fn contains_lattice(&self, alpha: &[i64], m: u64, arith: Arith) -> Result<bool> {
        check_dim(self.dim, alpha.len())?;
        if self.exact_mode(arith) {
            let f = BigRational::from_i64(m as i64);
            let q: Vec<BigRational> = alpha
                .iter()
                .map(|&a| BigRational::from_i64(a) / f.clone())
                .collect();
            Ok(self.contains_exact(&q))
        } else {
            let x: Vec<f64> = alpha.iter().map(|&a| a as f64 / m as f64).collect();
            self.contains(&x, Arith::Float)
        }
    }
}

fn to_exact(points: &[Vec<f64>]) -> Result<Vec<Vec<BigRational>>> {
    points
        .iter()
        .map(|v| v.iter().map(|&c| rational_from_f64(c)).collect())
        .collect()
}

fn hrep_to_f64(h: &HRep<BigRational>) -> HRep<f64> {
    let conv = |(a, b): &(Vec<BigRational>, BigRational)| {
        (a.iter().map(Scalar::to_f64).collect(), b.to_f64())
    };
    HRep {
        equalities: h.equalities.iter().map(conv).collect(),
        facets: h.facets.iter().map(conv).collect(),
    }
}

/// Common test shapes.
pub mod shapes {
    use super::*;
    use crate::field::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).expect("literal")
    }

    fn rational(dim: usize, pts: &[&[&str]]) -> Polytope {
        Polytope::from_rational(
            dim,
            pts.iter().map(|v| v.iter().map(|c| q(c)).collect()).collect(),
        )
        .expect("valid shape")
    }

    pub fn unit_square() -> Polytope {
        rational(2, &[&["0", "0"], &["1", "0"], &["1", "1"], &["0", "1"]])
    }

    pub fn standard_simplex(dim: usize) -> Polytope {
        let mut pts = vec![vec![q("0"); dim]];
        for j in 0..dim {
            let mut e = vec![q("0"); dim];
            e[j] = q("1");
            pts.push(e);
        }
        Polytope::from_rational(dim, pts).expect("simplex")
    }

    pub fn segment(end: &str) -> Polytope {
        rational(1, &[&["0"], &[end]])
    }

    pub fn origin(dim: usize) -> Polytope {
        Polytope::from_rational(dim, vec![vec![q("0"); dim]]).expect("origin")
    }

    /// `ch{(0,0), (a,0), (b,1-b), (0,1)}`.
    pub fn quadrilateral(a: &BigRational, b: &BigRational) -> Result<Polytope> {
        let zero = q("0");
        let one = q("1");
        Polytope::from_rational(
            2,
            vec![
                vec![zero.clone(), zero.clone()],
                vec![a.clone(), zero.clone()],
                vec![b.clone(), &one - b],
                vec![zero, one],
            ],
        )
    }
}
