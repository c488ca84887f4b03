//! Exact multivariate polynomials over a field.

mod algebra;
mod linalg;
mod monomial;
mod parse;
mod polynomial;
mod ring;
pub mod univariate;

pub use algebra::{
    determinant, divide_exact, gcd, jacobian_matrix, jacobian_matrix_named, minors, pseudo_rem, squarefree_part,
    sylvester_matrix, sylvester_resultant,
};
pub use linalg::{EchelonBasis, Matrix};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::Polynomial;
pub(crate) use polynomial::same_ring;
pub use ring::{is_valid_name, MonomialOrder, PolyRing, RingRef};
