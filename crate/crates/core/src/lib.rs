//! Exact certification of strong chirality for closed manifolds.

pub mod certificate;
pub mod dga;
pub mod error;
pub mod exact;
pub mod groups;
pub mod lens;
pub mod products;
pub mod torus;

pub use certificate::{Certificate, CertificateKind, Check, Verdict};
pub use error::{Error, Result};
pub use exact::{CancelToken, IntMatrix, IntPolynomial};
