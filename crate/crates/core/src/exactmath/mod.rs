//! Exact arithmetic foundation: rationals, dense and sparse elimination,
//! multivariate polynomials and binary forms.

pub mod binary;
pub mod field;
pub mod matrix;
pub mod modular;
pub mod poly;

pub use binary::{binary_gcd, BinaryForm};
pub use field::{rat, ratio, Field, PrimeField, Rational, Rationals};
pub use matrix::{kernel_basis, rank, rank_over_rows, Matrix, RatMatrix};
pub use poly::{binomial, monomials_of_degree, MPoly, Monomial};
