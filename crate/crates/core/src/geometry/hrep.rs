//! Facet enumeration by brute force over ray subsets.
//!
//! A polytope's facets are read off the cone over `{(v, 1)}`; the same routine
//! gives the facets of polyhedral cones for triangulation. Problem sizes are
//! desk scale (tens of generators, dimension <= 4), so the `C(k, d-1)` sweep is
//! cheap and, over rationals, exact.

use std::cmp::Ordering;

use crate::field::{dot, Scalar};
use crate::linalg::{nullspace, rank};

/// Facet description of `cone(rays)` inside its linear span.
#[derive(Debug, Clone)]
pub struct ConeFacets<T> {
    /// Basis of the orthogonal complement of the span.
    pub equalities: Vec<Vec<T>>,
    /// Inward facet normals `h` (so `<h, r> >= 0` for every ray), lying in the span.
    pub facets: Vec<Vec<T>>,
    pub span_dim: usize,
}

fn norm_mag<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
}

/// Scales `v` so its first non-negligible entry has magnitude one.
fn canonical<T: Scalar>(v: Vec<T>) -> Vec<T> {
    let scale = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    match v.iter().find(|x| !x.negligible(scale)) {
        Some(lead) => {
            let lead = lead.abs_s();
            v.into_iter().map(|x| x / lead.clone()).collect()
        }
        None => v,
    }
}

fn same<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x.clone() - y.clone()).negligible(1.0))
}

pub(crate) fn side<T: Scalar>(h: &[T], r: &[T]) -> Ordering {
    let v = dot(h, r);
    if v.negligible(norm_mag(h) * norm_mag(r)) {
        Ordering::Equal
    } else {
        v.sign()
    }
}

/// Visits every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn cone_facets<T: Scalar>(rays: &[Vec<T>], dim: usize) -> ConeFacets<T> {
    let equalities = nullspace(rays, dim);
    let span_dim = dim - equalities.len();
    let mut facets: Vec<Vec<T>> = Vec::new();
    if span_dim == 0 {
        return ConeFacets {
            equalities,
            facets,
            span_dim,
        };
    }
    for_each_subset(rays.len(), span_dim - 1, |subset| {
        let mut rows: Vec<Vec<T>> = subset.iter().map(|&i| rays[i].clone()).collect();
        rows.extend(equalities.iter().cloned());
        let ns = nullspace(&rows, dim);
        if ns.len() != 1 {
            return;
        }
        let h = ns.into_iter().next().unwrap();
        let (mut pos, mut neg) = (false, false);
        for r in rays {
            match side(&h, r) {
                Ordering::Greater => pos = true,
                Ordering::Less => neg = true,
                Ordering::Equal => {}
            }
        }
        let h = match (pos, neg) {
            (true, false) => h,
            (false, true) => h.into_iter().map(|x| -x).collect(),
            _ => return,
        };
        let h = canonical(h);
        if !facets.iter().any(|f| same(f, &h)) {
            facets.push(h);
        }
    });
    ConeFacets {
        equalities,
        facets,
        span_dim,
    }
}

/// `a·x = b` equalities and `a·x <= b` facet inequalities of a polytope.
#[derive(Debug, Clone)]
pub struct HRep<T> {
    pub equalities: Vec<(Vec<T>, T)>,
    pub facets: Vec<(Vec<T>, T)>,
}

impl<T: Scalar> HRep<T> {
    pub fn from_points(points: &[Vec<T>], dim: usize) -> Self {
        let lifted: Vec<Vec<T>> = points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(T::one());
                q
            })
            .collect();
        let cf = cone_facets(&lifted, dim + 1);
        let split = |v: &Vec<T>| (v[..dim].to_vec(), v[dim].clone());
        let equalities = cf
            .equalities
            .iter()
            .map(|e| {
                let (a, c) = split(e);
                (a, -c)
            })
            .collect();
        // a single point has no facets; the lifted ray's "facet" is the apex
        let facets = if cf.span_dim <= 1 {
            Vec::new()
        } else {
            cf.facets
                .iter()
                .map(|h| {
                    let (a, c) = split(h);
                    (a.into_iter().map(|x| -x).collect(), c)
                })
                .collect()
        };
        HRep { equalities, facets }
    }

    pub fn affine_dim(&self, dim: usize) -> usize {
        dim - self.equalities.len()
    }

    /// Largest constraint violation of `x` (positive means outside).
    pub fn violation(&self, x: &[T]) -> T {
        let mut worst = T::zero();
        let mut take = |v: T| {
            if (v.clone() - worst.clone()).sign() == Ordering::Greater {
                worst = v;
            }
        };
        for (a, b) in &self.equalities {
            take((dot(a, x) - b.clone()).abs_s());
        }
        for (a, b) in &self.facets {
            take(dot(a, x) - b.clone());
        }
        worst
    }

    /// Indices of facets tight at `x`.
    pub fn active(&self, x: &[T]) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| (dot(a, x) - b.clone()).negligible(1.0 + b.magnitude()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `x` is a vertex: the tight constraints have full rank.
    pub fn is_vertex(&self, x: &[T], dim: usize) -> bool {
        let mut rows: Vec<Vec<T>> = self.equalities.iter().map(|(a, _)| a.clone()).collect();
        rows.extend(self.active(x).into_iter().map(|i| self.facets[i].0.clone()));
        rank(&rows, dim) == dim
    }
}
