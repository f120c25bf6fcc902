//! The exceptional cases: invariance of every listed generator and basis element,
//! plus dimensions against the series.
//!
//!     cargo run --release --example weyl_cases

use modinv::fixedpoint::{case_elements, default_max_degree, verify_module};
use modinv::groups::{Case, CaseLabel};

fn main() {
    for label in [CaseLabel::E8P53, CaseLabel::F43, CaseLabel::E64, CaseLabel::E74, CaseLabel::E85a] {
        let case = Case::weyl(label).unwrap();
        let elements = case_elements(&case).unwrap();
        let names: Vec<&str> = elements.algebra_generators.iter().map(|e| e.name.as_str()).collect();
        let d = default_max_degree(&case);
        let report = verify_module(&case, d).unwrap();
        println!("{label}: generators {}; {} basis elements", names.join(", "), elements.basis.len());
        println!("  up to degree {d}: {}", if report.passed { "pass" } else { "FAIL" });
        for check in &report.eigen {
            if check.name.contains("= 2") {
                println!("  {}: {}", check.name, check.passed);
            }
        }
    }
}
