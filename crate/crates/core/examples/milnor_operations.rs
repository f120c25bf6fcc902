//! The Milnor operations Q_j acting on F_3[x1, x2, x3] ⊗ Λ(dx1, dx2, dx3).
//!
//!     cargo run --example milnor_operations

use modinv::algebra::TensorElement;
use modinv::field::Field;
use modinv::milnor::{milnor_composite, milnor_q, script_d, sign, MilnorIndexSet};

fn main() {
    let f = Field::prime(3).unwrap();
    let top = TensorElement::top(&f, 3);
    println!("u = {}", top.format("x"));
    for j in 0..3 {
        println!("Q_{j} u = {}", milnor_q(j, &top).format("x"));
    }

    let i = MilnorIndexSet::new(vec![0, 1, 2]).unwrap();
    println!("Q_0 Q_1 Q_2 u = {}", milnor_composite(&i, &top).format("x"));

    let a = MilnorIndexSet::new(vec![2]).unwrap();
    let b = MilnorIndexSet::new(vec![0, 1]).unwrap();
    println!("sign({{2}}, {{0,1}}) = {}", sign(&a, &b));
    let lhs = milnor_composite(&a, &milnor_composite(&b, &top));
    assert_eq!(lhs, milnor_composite(&i, &top));

    let twice = milnor_q(1, &milnor_q(1, &top));
    println!("Q_1 Q_1 u is zero: {}", twice.is_zero());

    let dx1 = TensorElement::dx(&f, 3, &[1]);
    println!("D(dx1) = {}", script_d(&dx1).unwrap().format("x"));
}
