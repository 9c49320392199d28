//! Exact arithmetic in ℂ, ℍ and 𝕆 defined by structure constants, and the
//! generalized Cauchy-Riemann systems for functions valued in them.
//!
//! Module map:
//! - [`algebra`]: structure tensors, elements, identity verification.
//! - [`cayley_dickson`]: doubling and signed-permutation isomorphism search.
//! - [`matrix_rep`]: 2×2 operator-entry matrices over ℍ representing 𝕆.
//! - [`expr`]: the expression language, componentwise polynomials, derivatives.
//! - [`cr`]: Dirac operators, residuals of every Cauchy-Riemann form, the κ family.
//! - [`cli`]: the command-line front end.

pub mod algebra;
pub mod cayley_dickson;
pub mod cli;
pub mod cr;
pub mod error;
pub mod expr;
pub mod matrix_rep;
pub mod poly;
pub mod sample;
pub mod scalar;

pub use algebra::{structure_tensor, verify_algebra_identities, Algebra, AlgebraSpec, Element};
pub use error::{Error, Result};
pub use scalar::{Field, Rational, Scalar};
