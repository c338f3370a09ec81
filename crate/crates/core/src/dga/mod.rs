//! Free graded-commutative rational DGAs and the degree-9 and degree-13
//! orientation obstructions built on them.

pub mod algebra;
pub mod automorphism;
pub mod cohomology;
pub mod model;
pub mod parse;

pub use algebra::{AlgElement, Endomorphism, GcAlgebra, Generator, Monomial};
pub use automorphism::{
    admissible_h2_matrix, enumerate_admissible_signed_permutations, extend_automorphism,
    unimodular_sweep, Coefficients, Extension, RejectReason, TransgressionData,
};
pub use cohomology::ExactnessTest;
pub use model::{
    admissibility_certificate, class_fixed_under, fundamental_class, minimal_model,
    minimal_model_with_x, verify_dim13, verify_dim9, Dim13Options, Dim13Report, Dim9Options,
    Dim9Report,
};
pub use parse::{format_algebra, parse_algebra};
