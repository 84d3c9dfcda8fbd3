//! Exponent classification, theorem and corollary checks, the quadrilateral
//! example, Cauchy coefficients and coefficient bounds.

pub mod classify;
pub mod coefficients;
pub mod decay;
pub mod example41;

pub use classify::{
    classify, default_margin, theorem_report, verify_corollaries, verify_theorem, Classification,
    ClassifyOptions, CorollaryReport, ExponentClassification, TheoremReport,
};
pub use coefficients::{
    coefficient_bound, log_coefficient_bound, polynomial_norm, taylor_coefficient, taylor_coefficients,
    CoefficientWindow, Nodes, Polynomial,
};
pub use decay::{decay_demo, DecayCurve, DecayOptions, DecaySample};
pub use example41::{example41, formula_terms, plus_variant_b1b, CellTerms, Example41Params, Example41Report};
