//! Exact arithmetic: prime fields, dense matrices, bivariate polynomials and
//! Gröbner bases.

pub mod field;
pub mod groebner;
pub mod matrix;
pub mod poly;

pub use field::{is_prime, FieldElement, PrimeField};
pub use groebner::{buchberger, colon_by_element, standard_monomials, GroebnerBasis, StandardMonomials};
pub use matrix::{solve_and_kernel, Matrix, QuotientSpace, Subspace};
pub use poly::{Mono, Poly2};
