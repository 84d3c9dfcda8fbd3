use crate::error::{check_dim, Error, Result};
use crate::exec::{par_map, Execution};
use crate::geometry::projection::project_to_polytope;
use crate::geometry::{Arith, Polytope};

/// Default ceiling on the number of enumerated lattice points.
pub const DEFAULT_ENUMERATION_CAP: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LatticePoint {
    pub alpha: Vec<i64>,
    /// `alpha ∈ m·S`.
    pub inside: bool,
}

/// Iterates the integer box `Π [lo_j, hi_j]` in lexicographic order.
pub(crate) fn integer_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return out;
    }
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut j = cur.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                for k in j + 1..cur.len() {
                    cur[k] = lo[k];
                }
                break;
            }
        }
    }
}

fn box_size(hi: &[i64]) -> u128 {
    hi.iter().map(|&h| (h.max(-1) + 1) as u128).product()
}

/// Lattice points of `ℕⁿ` in the bounding box of `m·S` inflated by `margin`,
/// each tagged inside/outside `m·S`.
pub fn lattice_points(s: &Polytope, m: u64, margin: f64, arith: Arith) -> Result<Vec<LatticePoint>> {
    lattice_points_capped(s, m, margin, arith, DEFAULT_ENUMERATION_CAP)
}

pub fn lattice_points_capped(
    s: &Polytope,
    m: u64,
    margin: f64,
    arith: Arith,
    cap: u128,
) -> Result<Vec<LatticePoint>> {
    if !margin.is_finite() || margin < 0.0 {
        return Err(Error::InvalidArgument(format!("margin must be finite and >= 0, got {margin}")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let hi: Vec<i64> = s
        .bbox_max()
        .iter()
        .map(|&b| (m as f64 * b + margin + 1e-9).floor() as i64)
        .collect();
    let points = box_size(&hi);
    if points > cap {
        return Err(Error::EnumerationCap { points, cap });
    }
    let lo = vec![0; s.dim()];
    integer_box(&lo, &hi)
        .into_iter()
        .map(|alpha| {
            let inside = s.contains_lattice(&alpha, m, arith)?;
            Ok(LatticePoint { alpha, inside })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LatticeGap {
    /// `d_m = dist(m·S, ℕⁿ \ m·S)`.
    pub distance: f64,
    /// A lattice point attaining the distance.
    pub witness: Vec<i64>,
}

fn distance_to_box(x: &[i64], hi: &[f64]) -> f64 {
    x.iter()
        .zip(hi)
        .map(|(&a, &h)| {
            let a = a as f64;
            let d = if a < 0.0 { -a } else if a > h { a - h } else { 0.0 };
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Lattice gap `d_m`, with the witnessing lattice point.
pub fn lattice_gap(s: &Polytope, m: u64, arith: Arith) -> Result<LatticeGap> {
    lattice_gap_with(s, m, arith, Execution::default())
}

pub fn lattice_gap_with(s: &Polytope, m: u64, arith: Arith, exec: Execution) -> Result<LatticeGap> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let ms = s.scaled(m);
    let bbox = ms.bbox_max();
    // one explicit outside point seeds the search radius
    let mut seed = vec![0i64; s.dim()];
    seed[0] = bbox[0].floor() as i64 + 1;
    let seed_proj = project_to_polytope(&ms, &to_f64(&seed))?;
    let radius = seed_proj.distance;
    let hi: Vec<i64> = bbox.iter().map(|&b| (b + radius).floor() as i64).collect();
    let points = box_size(&hi);
    if points > DEFAULT_ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            points,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let candidates: Vec<Vec<i64>> = integer_box(&vec![0; s.dim()], &hi)
        .into_iter()
        .filter(|a| distance_to_box(a, &bbox) < radius + 1e-12)
        .collect();
    let distances = par_map(exec, &candidates, |alpha| -> Result<Option<f64>> {
        if ms.contains_lattice(alpha, 1, arith)? {
            return Ok(None);
        }
        Ok(Some(project_to_polytope(&ms, &to_f64(alpha))?.distance))
    });
    let mut best = LatticeGap {
        distance: radius,
        witness: seed,
    };
    for (alpha, d) in candidates.iter().zip(distances) {
        if let Some(d) = d? {
            let better = d < best.distance - 1e-12
                || (d <= best.distance + 1e-12 && alpha < &best.witness);
            if better {
                best = LatticeGap {
                    distance: d,
                    witness: alpha.clone(),
                };
            }
        }
    }
    Ok(best)
}

fn to_f64(a: &[i64]) -> Vec<f64> {
    a.iter().map(|&v| v as f64).collect()
}

/// Whether every box `[0, s_1] × ... × [0, s_n]` over a vertex lies in `S`.
pub fn is_lower_set(s: &Polytope, arith: Arith) -> Result<bool> {
    let n = s.dim();
    for v in s.vertices() {
        check_dim(n, v.len())?;
        for mask in 0u32..(1 << n) {
            let corner: Vec<f64> = (0..n)
                .map(|j| if mask & (1 << j) != 0 { v[j] } else { 0.0 })
                .collect();
            if !s.contains(&corner, arith)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
