//! JSON form of elements and group presentations.
//!
//!     cargo run --example serialization

use modinv::algebra::TensorElement;
use modinv::dickson;
use modinv::field::Field;
use modinv::groups::{gens_case, Case, GroupPresentation};
use modinv::milnor::MilnorIndexSet;

fn main() {
    let f9 = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
    let u = dickson::mui_q(&f9, &MilnorIndexSet::new(vec![0]).unwrap(), 2);
    let text = u.to_json();
    println!("{text}");
    let back = TensorElement::from_json(&text).unwrap();
    assert_eq!(back, u);

    let pres = gens_case(&Case::sl(2, &Field::prime(3).unwrap())).unwrap();
    let json = pres.to_json();
    println!("{json}");
    let again = GroupPresentation::from_json(&json).unwrap();
    assert_eq!(again.generators.len(), pres.generators.len());
}
