mod common;

use common::*;
use modinv::algebra::{Polynomial, TensorElement};
use modinv::dickson;
use modinv::field::Field;
use modinv::fixedpoint::{fixed_basis, fixed_dim, hilbert_coeff, FreeModuleDescription};
use modinv::groups::{act, gens_case, is_invariant, Case};
use modinv::milnor::{extract_basis_coefficient, milnor_composite, MilnorIndexSet};
use proptest::prelude::*;
use rand::Rng;

fn f9() -> Field {
    Field::new(3, 2, Some(&[1, 0, 1])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let field = f9();
        let (a, b, c) = (random_elem(&mut r, &field), random_elem(&mut r, &field), random_elem(&mut r, &field));
        prop_assert_eq!(field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)));
        prop_assert_eq!(field.add(a, field.neg(a)), field.zero());
        if let Some(inv) = field.inv(a) {
            prop_assert_eq!(field.mul(a, inv), field.one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(field.pow(a, 9), a);
    }

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let field = f(5);
        let a = random_poly(&mut r, &field, n, 5, 4);
        let b = random_poly(&mut r, &field, n, 5, 4);
        let c = random_poly(&mut r, &field, n, 5, 4);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(a.q_power(), a.pow(5));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
        }
    }

    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let field = f(3);
        let rr = r.gen_range(0..=n);
        let s = r.gen_range(0..=n);
        let u = random_tensor(&mut r, &field, n, Some(rr), 3);
        let v = random_tensor(&mut r, &field, n, Some(s), 3);
        let w = random_tensor(&mut r, &field, n, None, 3);
        prop_assert_eq!(u.wedge(&v), v.wedge(&u).scale(sign(&field, rr * s)));
        prop_assert_eq!(u.wedge(&v).wedge(&w), u.wedge(&v.wedge(&w)));
    }

    #[test]
    fn action_is_a_left_action(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let field = f(3);
        let g = random_invertible(&mut r, &field, n);
        let h = random_invertible(&mut r, &field, n);
        let u = random_tensor(&mut r, &field, n, None, 3);
        let v = random_tensor(&mut r, &field, n, None, 3);
        prop_assert_eq!(act(&g, &act(&h, &u).unwrap()).unwrap(), act(&g.multiply(&h), &u).unwrap());
        prop_assert_eq!(act(&g, &u.wedge(&v)).unwrap(), act(&g, &u).unwrap().wedge(&act(&g, &v).unwrap()));
    }

    #[test]
    fn basis_coefficients_are_recovered(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let field = f(3);
        let rr = r.gen_range(0..n);
        let top = TensorElement::top(&field, n);
        let sets = MilnorIndexSet::subsets_of_size(n, n - rr);
        let coeffs: Vec<Polynomial> = sets.iter().map(|_| random_poly(&mut r, &field, n, 3, 3)).collect();
        let mut a = TensorElement::zero(&field, n);
        for (set, c) in sets.iter().zip(&coeffs) {
            a = &a + &milnor_composite(set, &top).mul_poly(c);
        }
        if a.is_zero() {
            return Ok(());
        }
        for (set, c) in sets.iter().zip(&coeffs) {
            let (num, den) = extract_basis_coefficient(&a, set).unwrap();
            prop_assert!(den.is_one());
            prop_assert_eq!(&num, c);
        }
    }
}

#[test]
fn fixed_bases_are_invariant() {
    let f3 = f(3);
    for (case, degrees) in [
        (Case::gl(2, &f3), vec![10, 11, 15, 16, 24]),
        (Case::g0(3, &f3), vec![3, 4, 9, 12]),
        (Case::parabolic(3, &f3), vec![7, 10, 13]),
    ] {
        let pres = gens_case(&case).unwrap();
        for d in degrees {
            let basis = fixed_basis(&pres, d).unwrap();
            assert_eq!(basis.len(), fixed_dim(&pres, d).unwrap());
            for u in &basis {
                assert!(is_invariant(u, &pres).unwrap(), "{} degree {d}", case.name());
                assert_eq!(u.coh_degree(), Some(d));
            }
        }
    }
}

#[test]
fn products_of_invariants_stay_in_the_fixed_space() {
    let f3 = f(3);
    let pres = gens_case(&Case::sl(2, &f3)).unwrap();
    let low = fixed_basis(&pres, 3).unwrap();
    let high = fixed_basis(&pres, 8).unwrap();
    for u in &low {
        for v in &high {
            let w = u.wedge(v);
            assert!(is_invariant(&w, &pres).unwrap());
            if !w.is_zero() {
                let span = fixed_basis(&pres, 11).unwrap();
                assert!(!span.is_empty());
                // w must be a combination of the echelon basis: reduce by leading terms
                let mut rest = w.clone();
                for b in &span {
                    let (j, p) = b.parts().iter().next().unwrap();
                    let (m, c) = p.leading_term().unwrap();
                    let coeff = rest.part(*j).map(|q| q.coefficient(&m)).unwrap_or(f3.zero());
                    let factor = f3.mul(coeff, f3.inv(c).unwrap());
                    rest = &rest - &b.scale(factor);
                }
                assert!(rest.is_zero());
            }
        }
    }
}

#[test]
fn trivial_series() {
    let desc = FreeModuleDescription { algebra_gen_degrees: vec![], basis_degrees: vec![0] };
    assert_eq!(hilbert_coeff(&desc, 0), 1);
    for d in 1..20 {
        assert_eq!(hilbert_coeff(&desc, d), 0);
    }
}

#[test]
fn theorem_basis_degrees_match_bookkeeping() {
    let f3 = f(3);
    for n in 2..=3 {
        let basis = dickson::theorem_basis(&f3, dickson::TheoremCase::Sl, n);
        assert_eq!(basis.len(), 1 << n);
        let desc = modinv::fixedpoint::module_description(&Case::sl(n, &f3));
        let degrees: Vec<u32> = basis.iter().map(|u| u.coh_degree().unwrap()).collect();
        assert_eq!(degrees, desc.basis_degrees);
    }
}
