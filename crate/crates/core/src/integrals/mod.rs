//! Monomial norms: closed forms over the normal fan, finiteness certificates
//! and numerical quadrature.

pub mod closed_form;
pub mod finiteness;
pub mod lp;
pub mod monte_carlo;
pub mod quadrature;
pub mod simplicial;
pub mod weight;

pub use closed_form::{monomial_norm_closed_form, CellIntegral, ClosedForm, DivergenceWitness};
pub use finiteness::{finiteness_lp, FinitenessVerdict, Status};
pub use lp::{lp_solve, LinearProgram, LpSolution};
pub use monte_carlo::{monte_carlo_cone_integral, MonteCarloEstimate};
pub use quadrature::{integrate_adaptive, integrate_box, integrate_box_with, quadrature_norm, QuadratureBudget, QuadratureNorm};
pub use simplicial::simplicial_exp_integral;
pub use weight::{GammaTerm, WeightSpec};
