//! Exact coefficients, monomials, term orders and sparse polynomials.

pub mod field;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod signature;

pub use field::{Coeff, FieldSpec};
pub use monomial::{Monomial, MAX_VARS};
pub use order::{LocalTruncation, MonomialOrder, TermOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use signature::RingSignature;
