//! Exact-arithmetic construction of q-immanant central elements for the
//! quantized enveloping algebra of gl(n), together with machine checks of
//! their defining properties on tensor-product representations: centrality,
//! Harish-Chandra eigenvalues as factorial Schur polynomials, Newton-type
//! identities for Gelfand invariants, and higher Capelli identities in the
//! braided Weyl algebra.
//!
//! Everything is computed over arbitrary-precision rationals with q a formal
//! parameter specialized to a rational value that is not a root of unity, so
//! every verification is an exact identity of matrices or polynomials rather
//! than a numeric approximation.

pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod hecke;
pub mod immanants;
pub mod linalg;
pub mod mat;
pub mod poly;
pub mod report;
pub mod suites;
pub mod tensor;
pub mod uqgln_rep;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{QConfig, Scalar};
