//! Invariants of SL_2(F_3) and GL_2(F_3) degree by degree against the predicted Hilbert series.
//!
//!     cargo run --release --example sl_verification

use modinv::field::Field;
use modinv::fixedpoint::{fixed_basis, verify_module};
use modinv::groups::{gens_case, Case};

fn main() {
    let f3 = Field::prime(3).unwrap();
    for case in [Case::sl(2, &f3), Case::gl(2, &f3)] {
        let report = verify_module(&case, 40).unwrap();
        let nonzero: Vec<String> =
            report.rows.iter().filter(|r| r.computed > 0).map(|r| format!("{}:{}", r.d, r.computed)).collect();
        println!("{}: {}", case.name(), if report.passed { "all degrees match" } else { "MISMATCH" });
        println!("  nonzero dimensions (degree:dim) {}", nonzero.join(" "));
    }

    let pres = gens_case(&Case::sl(2, &f3)).unwrap();
    for u in fixed_basis(&pres, 7).unwrap() {
        println!("invariant of degree 7: {}", u.format("x"));
    }
}
