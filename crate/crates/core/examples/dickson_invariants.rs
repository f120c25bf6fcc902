//! Dickson invariants e_n, c_{n,i} and the polynomials f_n(X), Δ_n(X) over F_3.
//!
//!     cargo run --example dickson_invariants

use modinv::dickson::{self, FMethod};
use modinv::field::Field;

fn main() {
    let f = Field::prime(3).unwrap();
    for n in 1..=3 {
        let e = dickson::dickson_e(&f, n);
        println!("e_{n}: degree {}, {} terms", e.degree(), e.len());
        for i in 0..n {
            let c = dickson::dickson_c(&f, n, i);
            println!("  c_{{{n},{i}}}: degree {}, {} terms", c.degree(), c.len());
        }
    }
    println!("e_2 = {}", dickson::dickson_e(&f, 2));
    println!("c_{{2,1}} = {}", dickson::dickson_c(&f, 2, 1));

    let fx = dickson::f_poly(&f, 2, FMethod::Recursive).unwrap();
    println!("f_2(X) = {}   (X = x3)", fx.poly());
    for k in [1, 3, 9] {
        println!("  coefficient of X^{k}: {}", fx.coefficient(k));
    }

    let delta = dickson::delta_poly(&f, 2);
    let e2 = dickson::dickson_e(&f, 2).embed(3, &[0, 1]);
    assert_eq!(delta.poly(), &(&e2 * fx.poly()));
    println!("Δ_2(X) = e_2 f_2(X) holds");

    let c0 = dickson::dickson_c(&f, 2, 0);
    assert_eq!(c0, dickson::dickson_e(&f, 2).pow(2));
    println!("c_{{2,0}} = e_2^2 holds");
}
