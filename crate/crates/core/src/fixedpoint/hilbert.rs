use serde::{Deserialize, Serialize};

/// Degree data of a free module `R ⊗ F{b_1, ..., b_m}` over a polynomial ring `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModuleDescription {
    /// Cohomological degrees of the polynomial generators of `R`.
    pub algebra_gen_degrees: Vec<u32>,
    /// Cohomological degrees of the module basis.
    pub basis_degrees: Vec<u32>,
}

/// Coefficients of `Σ_b t^{deg b} / ∏_a (1 - t^{deg a})` up to `t^d`.
pub fn hilbert_series(desc: &FreeModuleDescription, d: u32) -> Vec<u64> {
    let len = d as usize + 1;
    let mut coeffs = vec![0u64; len];
    for &b in &desc.basis_degrees {
        if (b as usize) < len {
            coeffs[b as usize] += 1;
        }
    }
    for &a in &desc.algebra_gen_degrees {
        assert!(a > 0, "algebra generators must have positive degree");
        let a = a as usize;
        for i in a..len {
            coeffs[i] += coeffs[i - a];
        }
    }
    coeffs
}

/// The degree-`d` coefficient of the Hilbert series: the predicted invariant dimension.
pub fn hilbert_coeff(desc: &FreeModuleDescription, d: u32) -> u64 {
    hilbert_series(desc, d)[d as usize]
}
