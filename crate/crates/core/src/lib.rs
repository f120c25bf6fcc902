//! Exact computer algebra in `P_n ⊗ E_n = F_q[x_1, ..., x_n] ⊗ Λ(dx_1, ..., dx_n)`
//! over finite fields of odd characteristic: Milnor operations `Q_j`, Dickson
//! and Mùi invariants, matrix group presentations, and brute-force
//! verification of invariant rings by fixed-subspace computation.
//!
//! ```
//! use modinv::{dickson, Field};
//!
//! let f = Field::prime(3).unwrap();
//! let e2 = dickson::dickson_e(&f, 2);
//! assert_eq!(dickson::dickson_c(&f, 2, 0), e2.pow(2));
//! ```

pub mod algebra;
pub mod cli;
pub mod dickson;
pub mod field;
pub mod fixedpoint;
pub mod groups;
pub mod matrix;
pub mod milnor;

pub use algebra::{AlgebraError, ExtIndex, Monomial, Polynomial, TensorElement};
pub use field::{Elem, Field, FieldElement, FieldError, FieldSpec};
pub use fixedpoint::{fixed_basis, fixed_dim, verify_module, wilkerson_check, FixedPointError, VerificationReport};
pub use groups::{gens_case, Case, CaseLabel, GroupMatrix, GroupPresentation};
pub use matrix::Matrix;
pub use milnor::{milnor_composite, milnor_q, MilnorIndexSet};
