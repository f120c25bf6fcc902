//! Arithmetic in F_9 = F_3[t]/(t^2 + 1).
//!
//!     cargo run --example field_arithmetic

use modinv::field::Field;

fn main() {
    let f9 = Field::new(3, 2, Some(&[1, 0, 1])).expect("t^2 + 1 is irreducible over F_3");
    let t = f9.power_basis(1);
    println!("q = {}", f9.q());
    println!("t * t = {}", f9.format_elem(f9.mul(t, t)));

    let w = f9.primitive_element();
    let powers: Vec<String> = (0..8).map(|k| f9.format_elem(f9.pow(w, k))).collect();
    println!("powers of the primitive element {}: {}", f9.format_elem(w), powers.join(", "));

    for a in f9.elements().into_iter().skip(1) {
        let inv = f9.inv(a).unwrap();
        assert_eq!(f9.mul(a, inv), f9.one());
    }
    println!("every nonzero element is invertible");
}
