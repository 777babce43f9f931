//! Exact integer matrix algebra: Hermite and Smith normal forms,
//! unimodularity, basis completion, kernels and solving over ℤ.
//!
//! Everything is exact. Dense matrices are used for small pairing data,
//! sparse ones for boundary operators; both share the [`Int`] scalar.

mod field;
mod int;
mod matrix;
mod normal_form;
mod ops;
mod sparse;

pub use field::{inverse_mod2, rank_mod2, rank_mod2_dense, rank_rational};
pub use int::Int;
pub use matrix::IntMatrix;
pub use normal_form::{hnf, invariant_factors, snf, SmithDecomposition};
pub use ops::{
    complete_to_basis, is_unimodular_sequence, kernel_basis, kernel_basis_i64, solve_integer,
    unimodular_inverse, IntegerSolver,
};
pub use sparse::SparseIntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer does not fit in 64 bits")]
    Overflow,
}
