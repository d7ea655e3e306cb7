//! Element orders in the integral symplectic group `Sp(2g, Z)`.
//!
//! - [`numtheory`]: factorization, Euler's totient, the `φ(m) > m^α` test.
//! - [`criterion`]: which orders occur for a given genus, the maximal order,
//!   and its closed-form bound.
//! - [`matrix`]: exact integer matrices, the symplectic condition, and
//!   certified order computation.
//! - [`bender`]: words in the generators `K`, `L` of `Sp(4, Z)`.
//! - [`cli`]: the `sptorsion` command line.

pub mod bender;
pub mod cli;
pub mod criterion;
pub mod matrix;
pub mod numtheory;

pub use bender::{evaluate, parse_word, verify_relations, Word};
pub use criterion::{
    burgisser_criterion, enumerate_orders, max_order, order_bound, power_solvable, Genus,
};
pub use matrix::{certified_order, is_symplectic, matrix_order, IntMatrix, MatrixOrder};
pub use numtheory::{euler_phi, factorize, shapiro_check, Factorization};
