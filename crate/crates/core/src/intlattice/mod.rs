//! Exact arithmetic on integer and rational lattices.
//!
//! Lattices live in ℚⁿ with a single global denominator and are kept in a
//! canonical Hermite form, so equal point sets compare equal. Quotients are
//! computed with Smith normal form; [`brute_force_quotient`] is an independent
//! coset-enumeration oracle used to cross-check it.

mod lattice;
mod matrix;
mod normal_form;
mod quotient;

pub use lattice::Lattice;
pub use matrix::{
    common_denominator, format_qvector, int_to_q, q_to_int, qvec, qvec_frac, IntMatrix, QVector, RatMatrix,
};
pub use normal_form::{
    elementary_divisors, hermite_decomposition, hnf, left_kernel, snf, HermiteDecomposition, SmithDecomposition,
};
pub use quotient::{brute_force_index, brute_force_quotient, quotient_structure, small_index, QuotientStructure};
