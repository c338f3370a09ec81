//! Rational Betti bookkeeping, product rules for strong chirality, and a
//! planner producing a strongly chiral construction in every dimension.

pub mod descriptor;
pub mod planner;
pub mod rules;

pub use descriptor::{
    connected_sum, is_rational_homology_sphere, kunneth, Chirality, ChiralityStatus,
    ManifoldDescriptor, Provenance,
};
pub use planner::{plan_dimension, Plan, PlanOptions, Planner, Recipe};
pub use rules::{
    product, product_chirality_diff_dim, product_chirality_same_dim, signature_obstruction,
    ProductRule, RuleVerdict, SignatureEvidence,
};
