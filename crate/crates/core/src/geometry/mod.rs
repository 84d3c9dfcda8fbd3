//! Convex geometry of vertex-listed polytopes in the nonnegative orthant.

pub mod cone;
pub mod fan;
pub mod hrep;
pub mod lattice;
pub mod polytope;
pub mod projection;

use num_complex::Complex64;

pub use cone::PolyhedralCone;
pub use fan::{normal_fan, FanCell, NormalFan};
pub use lattice::{is_lower_set, lattice_gap, lattice_points, LatticeGap, LatticePoint};
pub use polytope::{shapes, Arith, Polytope};
pub use projection::{project_to_polytope, Projection};

use crate::error::{Error, Result};

/// `ψ(z) = 2m·H_S(z) + γ·log(1 + |z|²)`.
pub fn log_weight(s: &Polytope, m: u64, gamma: f64, z: &[Complex64]) -> Result<f64> {
    if gamma < 0.0 || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!("gamma must be >= 0, got {gamma}")));
    }
    let h = s.log_support(z)?;
    let r2: f64 = z.iter().map(|w| w.norm_sqr()).sum();
    Ok(2.0 * m as f64 * h + gamma * r2.ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_weight_examples() {
        let e = std::f64::consts::E;
        let sq = shapes::unit_square();
        let z = [Complex64::new(e, 0.0), Complex64::new(e, 0.0)];
        assert!((log_weight(&sq, 1, 0.0, &z).unwrap() - 4.0).abs() < 1e-14);
        let one = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        assert_eq!(log_weight(&sq, 3, 0.0, &one).unwrap(), 0.0);
        let seg = shapes::segment("1");
        assert_eq!(log_weight(&seg, 2, 1.0, &[Complex64::new(0.0, 0.0)]).unwrap(), 0.0);
        assert!(log_weight(&seg, 2, -1.0, &[Complex64::new(0.0, 0.0)]).is_err());
    }
}
