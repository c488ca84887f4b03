//! Exact computer algebra for corank-one map germs `(Cⁿ,S) → (Cⁿ⁺¹,0)`:
//! multiple point spaces, stability verdicts, alternating and image Milnor
//! numbers, and equisingularity checks for one-parameter families.
//!
//! The kernel is generic over an exact [`Field`]; the aliases below fix the
//! arbitrary-precision rationals used by the singularity-theory layers.

pub mod bases;
pub mod error;
pub mod family;
pub mod germ;
pub mod image_milnor;
pub mod multiple_points;
pub mod poly;
pub mod scalar;

pub use error::{Error, Resource, Result};
pub use scalar::Field;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Polynomials over [`Rational`].
pub type Poly = poly::Polynomial<Rational>;
