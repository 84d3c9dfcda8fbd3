use std::f64::consts::PI;

use crate::error::Result;
use crate::field::Scalar;
use crate::geometry::cone::{f64_vec, PolyhedralCone};
use crate::geometry::Polytope;

/// One normal cone `N_s` of the fan.
#[derive(Debug, Clone)]
pub struct FanCell {
    /// Index into the owner's vertex list.
    pub vertex: usize,
    pub cone: PolyhedralCone,
}

#[derive(Debug, Clone)]
pub struct NormalFan {
    owner: Polytope,
    cells: Vec<FanCell>,
}

impl NormalFan {
    pub fn owner(&self) -> &Polytope {
        &self.owner
    }

    pub fn cells(&self) -> &[FanCell] {
        &self.cells
    }

    /// The first cell (in fan order) whose cone contains `xi`.
    pub fn locate(&self, xi: &[f64], tol: f64) -> Option<&FanCell> {
        self.cells.iter().find(|c| c.cone.contains(xi, tol))
    }
}

/// Normal fan of `s`: one cell per vertex.
///
/// Cell rays are the outward normals of the facets through the vertex plus both
/// orientations of every equality normal (lower-dimensional `S` has a lineality
/// space in each cell). The dual description lists `s - v` for all other vertices.
/// In the plane the cells come out in counter-clockwise order.
pub fn normal_fan(s: &Polytope) -> Result<NormalFan> {
    let dim = s.dim();
    let hrep = s.exact_hrep();
    let mut cells = Vec::with_capacity(s.vertices().len());
    for (i, v) in s.exact_vertices().iter().enumerate() {
        let mut rays: Vec<Vec<f64>> = hrep
            .active(v)
            .into_iter()
            .map(|f| f64_vec(&hrep.facets[f].0))
            .collect();
        for (a, _) in &hrep.equalities {
            let a = f64_vec(a);
            rays.push(a.iter().map(|x| -x).collect());
            rays.push(a);
        }
        let normals: Vec<Vec<f64>> = s
            .exact_vertices()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| v.iter().zip(w).map(|(a, b)| (a.clone() - b.clone()).to_f64()).collect())
            .collect();
        let cone = PolyhedralCone::new(dim, rays)?.with_normals(normals)?;
        cells.push(FanCell { vertex: i, cone });
    }
    if dim == 2 && cells.len() > 1 {
        cells.sort_by(|a, b| {
            arc_of_cell(&a.cone)
                .0
                .total_cmp(&arc_of_cell(&b.cone).0)
        });
    }
    Ok(NormalFan {
        owner: s.clone(),
        cells,
    })
}

/// Angular extent `[start, end]` (radians, `start ∈ [0, 2π)`) of a planar cone.
pub fn arc_of_cell(cone: &PolyhedralCone) -> (f64, f64) {
    let units: Vec<(f64, f64)> = cone
        .rays()
        .iter()
        .map(|r| {
            let n = r[0].hypot(r[1]);
            (r[0] / n, r[1] / n)
        })
        .collect();
    let (sx, sy) = units
        .iter()
        .fold((0.0, 0.0), |(x, y), (a, b)| (x + a, y + b));
    if sx.hypot(sy) < 1e-12 {
        return (0.0, 2.0 * PI);
    }
    let centre = sy.atan2(sx);
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 0.0;
    for (x, y) in units {
        let mut d = y.atan2(x) - centre;
        while d <= -PI {
            d += 2.0 * PI;
        }
        while d > PI {
            d -= 2.0 * PI;
        }
        lo = lo.min(d);
        hi = hi.max(d);
    }
    let start = (centre + lo).rem_euclid(2.0 * PI);
    (start, start + (hi - lo))
}
