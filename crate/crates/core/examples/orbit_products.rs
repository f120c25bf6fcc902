//! O_{n-1}(x_i): a product over a span and a sum of Dickson invariants.
//!
//!     cargo run --example orbit_products

use modinv::algebra::TensorElement;
use modinv::dickson::{self, OMethod};
use modinv::field::Field;
use modinv::milnor::script_d;

fn main() {
    let f = Field::prime(3).unwrap();
    for n in 2..=4 {
        let product = dickson::o_poly(&f, n, 1, OMethod::Product).unwrap();
        let sum = dickson::o_poly(&f, n, 1, OMethod::DicksonSum).unwrap();
        assert_eq!(product, sum);
        let d = script_d(&TensorElement::dx(&f, n, &[1])).unwrap();
        assert_eq!(d, TensorElement::from_poly(product.clone()));
        println!("n = {n}: O(x1) has degree {} and {} terms; D(dx1) = O(x1)", product.degree(), product.len());
    }
    println!("O_2(x1) = {}", dickson::o_poly(&f, 3, 1, OMethod::DicksonSum).unwrap());
    println!("O_2(x2) = {}", dickson::o_poly(&f, 3, 2, OMethod::DicksonSum).unwrap());
}
