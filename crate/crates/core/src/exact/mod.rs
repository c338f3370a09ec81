//! Exact integer and rational primitives shared by every certifier.

pub mod lattice;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod rational;
pub mod search;

pub use lattice::{hermite_normal_form, integer_kernel, intertwiner_lattice};
pub use matrix::{char_poly, determinant, IntMatrix};
pub use modular::{factorize, is_prime, minus_one_is_qr, primitive_root, MinusOneQr, Residue};
pub use poly::{poly_is_squarefree, reciprocal_poly, sturm_real_root_count, IntPolynomial};
pub use search::CancelToken;
