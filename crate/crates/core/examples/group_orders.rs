//! Generator sets for every case and their orders by enumeration.
//!
//!     cargo run --release --example group_orders

use modinv::field::Field;
use modinv::groups::{gens_case, group_order_bfs, Case, CaseLabel};

fn main() {
    let f3 = Field::prime(3).unwrap();
    let mut cases =
        vec![Case::sl(2, &f3), Case::gl(2, &f3), Case::sl(3, &f3), Case::g0(3, &f3), Case::parabolic(3, &f3)];
    for label in [CaseLabel::F43, CaseLabel::E8P53, CaseLabel::E64, CaseLabel::E74] {
        cases.push(Case::weyl(label).unwrap());
    }
    println!("{:<16} {:>5} {:>10} {:>10}", "case", "gens", "formula", "counted");
    for case in cases {
        let pres = gens_case(&case).unwrap();
        let counted = group_order_bfs(&pres, 1_000_000).unwrap();
        println!("{:<16} {:>5} {:>10} {:>10}", case.name(), pres.generators.len(), pres.order_formula, counted);
    }
}
