//! Polynomials over `F_q` and the tensor algebra `P_n ⊗ E_n`.

mod json;
pub mod monomial;
pub mod polynomial;
pub mod tensor;

pub use json::{TensorJson, TermJson};
pub use monomial::{monomials_of_degree, Monomial, MAX_VARS};
pub use polynomial::{LinearSubstitution, Polynomial};
pub use tensor::{ExtIndex, TensorElement};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid term: {0}")]
    InvalidTerm(String),
}
