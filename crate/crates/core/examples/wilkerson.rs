//! Degree products of polynomial invariant generators against group orders.
//!
//!     cargo run --example wilkerson

use modinv::field::Field;
use modinv::fixedpoint::wilkerson_check;
use modinv::groups::{Case, CaseLabel};

fn main() {
    let f3 = Field::prime(3).unwrap();
    let mut cases =
        vec![Case::sl(2, &f3), Case::gl(2, &f3), Case::sl(3, &f3), Case::g0(3, &f3), Case::parabolic(3, &f3)];
    cases.extend([CaseLabel::E64, CaseLabel::E74, CaseLabel::E85a].map(|l| Case::weyl(l).unwrap()));
    for case in cases {
        let w = wilkerson_check(&case).unwrap();
        let degrees: Vec<String> = w.degrees.iter().map(|d| d.to_string()).collect();
        print!("{:<16} {} = {} (order {})", case.name(), degrees.join("·"), w.degree_product, w.order);
        if w.witness.applicable {
            println!("  witness {} ok: {}", w.witness.witness, w.witness.passed());
        } else {
            println!();
        }
    }
}
