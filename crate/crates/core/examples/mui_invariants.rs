//! Mùi invariants as Milnor composites and as determinants.
//!
//!     cargo run --example mui_invariants

use modinv::dickson;
use modinv::field::Field;
use modinv::milnor::{milnor_composite_desc, top_form, MilnorIndexSet};

fn main() {
    let f = Field::prime(3).unwrap();
    let n = 3;
    for set in MilnorIndexSet::proper_subsets(n) {
        let u = dickson::mui_q(&f, &set, n);
        println!("Q{set:?} dx1dx2dx3: cohomological degree {}, {} terms", u.coh_degree().unwrap(), u.num_terms());
    }

    let det = dickson::mui_det(&f, 2, &[0, 1]).unwrap();
    println!("[0,1] = {det}");
    let set = MilnorIndexSet::new(vec![0, 1]).unwrap();
    let composite = milnor_composite_desc(&set, &top_form(&f, 2));
    assert_eq!(composite.as_polynomial().unwrap(), det);

    let bracket = dickson::mui_bracket(&f, 1, &[0, 2], 3).unwrap();
    println!("[1: 0,2] = {}", bracket.format("x"));
    let desc = milnor_composite_desc(&MilnorIndexSet::new(vec![0, 2]).unwrap(), &top_form(&f, 3));
    assert_eq!(bracket, desc.scale(f.sign(2)));
    println!("bracket form agrees with Q_2 Q_0 dx1dx2dx3");
}
