use crate::algebra::{ExtIndex, Polynomial, TensorElement};
use crate::dickson::{self, OMethod, TheoremCase};
use crate::field::Field;
use crate::groups::{Case, CaseLabel};
use crate::milnor::{milnor_composite, MilnorIndexSet};

use super::hilbert::FreeModuleDescription;
use super::FixedPointError;

fn deg_e(n: usize, q: u32) -> u32 {
    2 * (q.pow(n as u32) - 1) / (q - 1)
}

fn deg_c(n: usize, i: usize, q: u32) -> u32 {
    2 * (q.pow(n as u32) - q.pow(i as u32))
}

fn deg_o(n: usize, q: u32) -> u32 {
    2 * q.pow(n as u32 - 1)
}

fn shift(index: &MilnorIndexSet, q: u32) -> u32 {
    index.degree_shift(q) as u32
}

fn shifts(sets: Vec<MilnorIndexSet>, q: u32, base: u32) -> impl Iterator<Item = u32> {
    sets.into_iter().map(move |s| base + shift(&s, q))
}

/// Degrees of the polynomial generators and module basis claimed for a case.
pub fn module_description(case: &Case) -> FreeModuleDescription {
    let q = case.field.q();
    let n = case.n;
    let mut alg = Vec::new();
    let mut basis = vec![0];
    match case.label {
        CaseLabel::Sl | CaseLabel::F43 | CaseLabel::E8P53 => {
            alg.push(deg_e(n, q));
            alg.extend((1..n).rev().map(|i| deg_c(n, i, q)));
            basis.extend(shifts(MilnorIndexSet::proper_subsets(n), q, n as u32));
        }
        CaseLabel::Gl => {
            alg.extend((0..n).map(|i| deg_c(n, i, q)));
            basis.extend(shifts(MilnorIndexSet::proper_subsets(n), q, (q - 2) * deg_e(n, q) + n as u32));
        }
        CaseLabel::G0 => {
            alg.push(deg_o(n, q));
            alg.extend(std::iter::repeat_n(2, n - 1));
            basis.clear();
            basis.extend(shifts(MilnorIndexSet::all_subsets(n - 1), q, n as u32));
            basis.extend((0u32..1 << (n - 1)).map(|m| m.count_ones()));
        }
        CaseLabel::Parabolic => {
            alg.push(deg_o(n, q));
            alg.push(deg_e(n - 1, q));
            alg.extend((1..n - 1).rev().map(|i| deg_c(n - 1, i, q)));
            basis.extend(shifts(MilnorIndexSet::proper_subsets(n - 1), q, n as u32 - 1));
            basis.extend(shifts(MilnorIndexSet::all_subsets(n - 1), q, n as u32));
        }
        CaseLabel::E64 | CaseLabel::E74 => {
            alg.extend([deg_e(3, q), deg_c(3, 2, q), deg_c(3, 1, q)]);
            basis.extend(shifts(MilnorIndexSet::proper_subsets(3), q, 3));
            if case.label == CaseLabel::E64 {
                alg.push(deg_o(4, q));
                basis.extend(shifts(MilnorIndexSet::all_subsets(3), q, 4));
            } else {
                alg.push(2 * deg_o(4, q));
                basis.extend(shifts(MilnorIndexSet::all_subsets(3), q, deg_o(4, q) + 4));
            }
        }
        CaseLabel::E85a => {
            alg.extend([4, deg_e(3, q), deg_c(3, 2, q), deg_c(3, 1, q), 2 * deg_o(5, q)]);
            basis.extend(shifts(MilnorIndexSet::proper_subsets(3), q, 3));
            basis.push(3);
            basis.extend(shifts(MilnorIndexSet::proper_subsets(3), q, 6));
            basis.extend(shifts(MilnorIndexSet::all_subsets(4), q, 2 + deg_o(5, q) + 5));
        }
    }
    FreeModuleDescription { algebra_gen_degrees: alg, basis_degrees: basis }
}

/// A constructed element together with a display name.
#[derive(Debug, Clone)]
pub struct NamedElement {
    pub name: String,
    pub element: TensorElement,
}

impl NamedElement {
    fn new(name: impl Into<String>, element: impl Into<TensorElement>) -> NamedElement {
        NamedElement { name: name.into(), element: element.into() }
    }
}

/// Explicit polynomial generators and module basis of a case, in the order of
/// [`module_description`].
#[derive(Debug, Clone)]
pub struct CaseElements {
    pub algebra_generators: Vec<NamedElement>,
    pub basis: Vec<NamedElement>,
}

/// `e_m` or `c_{m,i}` in the variables `first, ..., first + m - 1` of an `n`-variable ring.
fn shifted(p: Polynomial, n: usize, first: usize) -> Polynomial {
    let m = p.n();
    let map: Vec<usize> = (first - 1..first - 1 + m).collect();
    p.embed(n, &map)
}

fn ext(indices: std::ops::RangeInclusive<usize>, field: &Field, n: usize) -> TensorElement {
    let idx: Vec<usize> = indices.collect();
    TensorElement::from_part(ExtIndex::from_indices(&idx), Polynomial::one(field, n))
}

fn set_name(index: &MilnorIndexSet) -> String {
    let parts: Vec<String> = index.indices().iter().map(|i| i.to_string()).collect();
    format!("Q{{{}}}", parts.join(","))
}

/// Dickson generators `e_m, c_{m,m-1}, ..., c_{m,1}` on variables starting at `first`, with names.
fn dickson_generators(field: &Field, n: usize, m: usize, first: usize, weyl: bool) -> Vec<NamedElement> {
    let q = field.q();
    let name_e = |d: u32| if weyl { format!("x{d}") } else { format!("e_{m}") };
    let mut out = vec![NamedElement::new(name_e(deg_e(m, q)), shifted(dickson::dickson_e(field, m), n, first))];
    for i in (1..m).rev() {
        let name = if weyl { format!("x{}", deg_c(m, i, q)) } else { format!("c_{{{m},{i}}}") };
        out.push(NamedElement::new(name, shifted(dickson::dickson_c(field, m, i), n, first)));
    }
    out
}

/// Builds every named generator and basis element of a case.
pub fn case_elements(case: &Case) -> Result<CaseElements, FixedPointError> {
    let f = &case.field;
    let n = case.n;
    let q = f.q();
    let mut alg = Vec::new();
    let mut basis = Vec::new();
    let weyl = case.label.is_weyl();
    match case.label {
        CaseLabel::Sl | CaseLabel::F43 | CaseLabel::E8P53 => {
            alg = dickson_generators(f, n, n, 1, weyl);
            let elems = dickson::theorem_basis(f, TheoremCase::Sl, n);
            basis.push(NamedElement::new("1", elems[0].clone()));
            for (index, e) in MilnorIndexSet::proper_subsets(n).iter().zip(&elems[1..]) {
                let top = if weyl { "u3".to_string() } else { "dx".to_string() };
                basis.push(NamedElement::new(format!("{} {top}", set_name(index)), e.clone()));
            }
        }
        CaseLabel::Gl => {
            for i in 0..n {
                alg.push(NamedElement::new(format!("c_{{{n},{i}}}"), dickson::dickson_c(f, n, i)));
            }
            let elems = dickson::theorem_basis(f, TheoremCase::Gl, n);
            basis.push(NamedElement::new("1", elems[0].clone()));
            for (index, e) in MilnorIndexSet::proper_subsets(n).iter().zip(&elems[1..]) {
                basis.push(NamedElement::new(format!("e_{n}^{} {} dx", q - 2, set_name(index)), e.clone()));
            }
        }
        CaseLabel::G0 => {
            alg.push(NamedElement::new(format!("O_{}(x1)", n - 1), dickson::o_poly(f, n, 1, OMethod::DicksonSum)?));
            for i in 2..=n {
                alg.push(NamedElement::new(format!("x{i}"), Polynomial::var(f, n, i)));
            }
            let top = ext(1..=n, f, n);
            for index in MilnorIndexSet::all_subsets(n - 1) {
                basis.push(NamedElement::new(format!("{} dx", set_name(&index)), milnor_composite(&index, &top)));
            }
            for mask in 0u32..1 << (n - 1) {
                let idx: Vec<usize> = (0..n - 1).filter(|b| mask & (1 << b) != 0).map(|b| b + 2).collect();
                let name = if idx.is_empty() {
                    "1".to_string()
                } else {
                    idx.iter().map(|i| format!("dx{i}")).collect::<Vec<_>>().join(" ")
                };
                let el = TensorElement::from_part(ExtIndex::from_indices(&idx), Polynomial::one(f, n));
                basis.push(NamedElement::new(name, el));
            }
        }
        CaseLabel::Parabolic => {
            alg.push(NamedElement::new(format!("O_{}(x1)", n - 1), dickson::o_poly(f, n, 1, OMethod::DicksonSum)?));
            let mut gens = dickson_generators(f, n, n - 1, 2, false);
            for g in &mut gens {
                g.name.push_str("(x2..)");
            }
            alg.extend(gens);
            basis.push(NamedElement::new("1", TensorElement::one(f, n)));
            let lower = ext(2..=n, f, n);
            for index in MilnorIndexSet::proper_subsets(n - 1) {
                basis.push(NamedElement::new(
                    format!("{} dx2..dx{n}", set_name(&index)),
                    milnor_composite(&index, &lower),
                ));
            }
            let top = ext(1..=n, f, n);
            for index in MilnorIndexSet::all_subsets(n - 1) {
                basis.push(NamedElement::new(format!("{} dx", set_name(&index)), milnor_composite(&index, &top)));
            }
        }
        CaseLabel::E64 | CaseLabel::E74 => {
            alg.extend(dickson_generators(f, 4, 3, 2, true));
            let x54 = dickson::o_poly(f, 4, 1, OMethod::DicksonSum)?;
            let u3 = ext(2..=4, f, 4);
            let u4 = ext(1..=4, f, 4);
            basis.push(NamedElement::new("1", TensorElement::one(f, 4)));
            for index in MilnorIndexSet::proper_subsets(3) {
                basis.push(NamedElement::new(format!("{} u3", set_name(&index)), milnor_composite(&index, &u3)));
            }
            if case.label == CaseLabel::E64 {
                alg.push(NamedElement::new("x54", x54));
                for index in MilnorIndexSet::all_subsets(3) {
                    basis.push(NamedElement::new(format!("{} u4", set_name(&index)), milnor_composite(&index, &u4)));
                }
            } else {
                alg.push(NamedElement::new("x108", x54.pow(2)));
                for index in MilnorIndexSet::all_subsets(3) {
                    let el = milnor_composite(&index, &u4).mul_poly(&x54);
                    basis.push(NamedElement::new(format!("x54 {} u4", set_name(&index)), el));
                }
            }
        }
        CaseLabel::E85a => {
            let x2 = Polynomial::var(f, 5, 5);
            alg.push(NamedElement::new("x4", x2.pow(2)));
            alg.extend(dickson_generators(f, 5, 3, 2, true));
            let x162 = dickson::o_poly(f, 5, 1, OMethod::DicksonSum)?;
            alg.push(NamedElement::new("x324", x162.pow(2)));
            let u1 = ext(5..=5, f, 5);
            let u3 = ext(2..=4, f, 5);
            let u5 = ext(1..=5, f, 5);
            let x2u1 = u1.mul_poly(&x2);
            basis.push(NamedElement::new("1", TensorElement::one(f, 5)));
            let qu3: Vec<(MilnorIndexSet, TensorElement)> =
                MilnorIndexSet::proper_subsets(3).into_iter().map(|i| (i.clone(), milnor_composite(&i, &u3))).collect();
            for (index, el) in &qu3 {
                basis.push(NamedElement::new(format!("{} u3", set_name(index)), el.clone()));
            }
            basis.push(NamedElement::new("x2 u1", x2u1.clone()));
            for (index, el) in &qu3 {
                basis.push(NamedElement::new(format!("({} u3) x2 u1", set_name(index)), el.wedge(&x2u1)));
            }
            let x2x162 = &x2 * &x162;
            for index in MilnorIndexSet::all_subsets(4) {
                let el = milnor_composite(&index, &u5).mul_poly(&x2x162);
                basis.push(NamedElement::new(format!("x2 x162 {} u5", set_name(&index)), el));
            }
        }
    }
    Ok(CaseElements { algebra_generators: alg, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn descriptions_reproduce_named_degrees() {
        let e8 = module_description(&Case::weyl(CaseLabel::E8P53).unwrap());
        assert_eq!(e8.algebra_gen_degrees, vec![62, 200, 240]);
        let f4 = module_description(&Case::weyl(CaseLabel::F43).unwrap());
        assert_eq!(f4.algebra_gen_degrees, vec![26, 36, 48]);
        let e85 = module_description(&Case::weyl(CaseLabel::E85a).unwrap());
        assert_eq!(e85.algebra_gen_degrees, vec![4, 26, 36, 48, 324]);
        assert!(e85.basis_degrees.contains(&3));
        let e6 = module_description(&Case::weyl(CaseLabel::E64).unwrap());
        assert_eq!(e6.algebra_gen_degrees, vec![26, 36, 48, 54]);
        let sl2 = module_description(&Case::sl(2, &f3()));
        assert_eq!(sl2, FreeModuleDescription { algebra_gen_degrees: vec![8, 12], basis_degrees: vec![0, 2, 3, 7] });
        let gl2 = module_description(&Case::gl(2, &f3()));
        assert_eq!(gl2.algebra_gen_degrees, vec![16, 12]);
        assert_eq!(gl2.basis_degrees, vec![0, 10, 11, 15]);
        let g0 = module_description(&Case::g0(3, &f3()));
        assert_eq!(g0.basis_degrees.len(), 8);
    }

    #[test]
    fn constructed_degrees_agree_with_bookkeeping() {
        for case in [Case::sl(2, &f3()), Case::gl(2, &f3()), Case::g0(3, &f3()), Case::parabolic(3, &f3())] {
            let desc = module_description(&case);
            let els = case_elements(&case).unwrap();
            let alg: Vec<u32> = els.algebra_generators.iter().map(|e| e.element.coh_degree().unwrap()).collect();
            let basis: Vec<u32> = els.basis.iter().map(|e| e.element.coh_degree().unwrap()).collect();
            assert_eq!(alg, desc.algebra_gen_degrees, "{}", case.name());
            assert_eq!(basis, desc.basis_degrees, "{}", case.name());
        }
    }
}
