//! The angular cone Γ, Γ-hulls, and simplicial triangulation of polyhedral cones.

pub mod angular;
pub mod hull;
pub mod hull2d;
pub mod triangulate;

pub use angular::{theorem_cone, AngularCone, Cone};
pub use hull::{hull_membership, hull_sup, is_gamma_convex, HullMembership, HullSup, Resolution};
pub use hull2d::{hull_polygon_2d, HullRegion};
pub use triangulate::triangulate;
