//! Milnor operations `Q_j` acting on `P_n ⊗ E_n` as `P_n`-linear derivations.
//!
//! `Q_j` sends `dx_i` to `x_i^{q^j}` and kills polynomials. On `f · dx_J` with
//! `J = {j_1 < ... < j_r}` it returns `Σ_k (-1)^{k-1} f x_{j_k}^{q^j} dx_{J \ j_k}`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{ExtIndex, Monomial, Polynomial, TensorElement};
use crate::dickson;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("index set must be strictly increasing, got {0:?}")]
    InvalidIndexSet(Vec<u32>),
    #[error("operation needs at least 2 variables, got {0}")]
    ArityTooSmall(usize),
    #[error("element is not of pure exterior degree")]
    DegreeMismatch,
    #[error("index set {index:?} must lie in 0..{n} and have size {expected}")]
    IndexMismatch { index: Vec<u32>, n: usize, expected: usize },
    #[error("result still has exterior degree > 0")]
    NotScalar,
}

/// A strictly increasing list of nonnegative integers naming the composite `Q_I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MilnorIndexSet(Vec<u32>);

impl MilnorIndexSet {
    pub fn new(indices: Vec<u32>) -> Result<MilnorIndexSet, MilnorError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MilnorError::InvalidIndexSet(indices));
        }
        Ok(MilnorIndexSet(indices))
    }

    pub fn empty() -> MilnorIndexSet {
        MilnorIndexSet(Vec::new())
    }

    /// `S_n = {0, ..., n-1}`.
    pub fn full(n: usize) -> MilnorIndexSet {
        MilnorIndexSet((0..n as u32).collect())
    }

    /// The set whose bit `i` is set in `mask`.
    pub fn from_mask(mask: u32) -> MilnorIndexSet {
        MilnorIndexSet((0..32).filter(|b| mask & (1 << b) != 0).collect())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &MilnorIndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &MilnorIndexSet) -> MilnorIndexSet {
        let mut v: Vec<u32> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        MilnorIndexSet(v)
    }

    pub fn difference(&self, other: &MilnorIndexSet) -> MilnorIndexSet {
        MilnorIndexSet(self.0.iter().copied().filter(|&i| !other.contains(i)).collect())
    }

    /// Cohomological degree added by `Q_I` over `F_q`: `Σ (2q^i - 1)`.
    pub fn degree_shift(&self, q: u32) -> u64 {
        self.0.iter().map(|&i| 2 * (q as u64).pow(i) - 1).sum()
    }

    /// `A_n`: all subsets of `S_n`, ordered by size and then lexicographically.
    pub fn all_subsets(n: usize) -> Vec<MilnorIndexSet> {
        let mut out: Vec<MilnorIndexSet> = (0u32..1 << n).map(MilnorIndexSet::from_mask).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `A_{n,r}`: subsets of `S_n` of size `r`.
    pub fn subsets_of_size(n: usize, r: usize) -> Vec<MilnorIndexSet> {
        MilnorIndexSet::all_subsets(n).into_iter().filter(|s| s.len() == r).collect()
    }

    /// `A'_n`: proper subsets of `S_n`.
    pub fn proper_subsets(n: usize) -> Vec<MilnorIndexSet> {
        MilnorIndexSet::all_subsets(n).into_iter().filter(|s| s.len() < n).collect()
    }
}

impl fmt::Debug for MilnorIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MilnorIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `Q_j(u)`. Panics if `q^j` exceeds the supported exponent range.
pub fn milnor_q(j: u32, u: &TensorElement) -> TensorElement {
    let f = u.field();
    let n = u.n();
    let power =
        (f.q() as u64).checked_pow(j).filter(|&e| e <= u16::MAX as u64).expect("q^j exceeds the exponent range");
    let mut out = TensorElement::zero(f, n);
    for (&ext, p) in u.parts() {
        for (k, i) in ext.indices().into_iter().enumerate() {
            let term = p.mul_term(Monomial::var_pow(i - 1, power as u32), f.sign(k));
            out.add_part(ext.remove(i), &term);
        }
    }
    out
}

/// `Q_I(u) = Q_{i_1}(Q_{i_2}(... Q_{i_r}(u)))`, innermost operation last in the list.
pub fn milnor_composite(index: &MilnorIndexSet, u: &TensorElement) -> TensorElement {
    index.indices().iter().rev().fold(u.clone(), |acc, &j| milnor_q(j, &acc))
}

/// `Q_{i_r} ... Q_{i_1}(u)`: the opposite composition order, applying `Q_{i_1}` first.
pub fn milnor_composite_desc(index: &MilnorIndexSet, u: &TensorElement) -> TensorElement {
    index.indices().iter().fold(u.clone(), |acc, &j| milnor_q(j, &acc))
}

/// The sign with `Q_I Q_J = sign(I, J) Q_{I ∪ J}`: zero on overlap, otherwise
/// the parity of pairs `i ∈ I`, `j ∈ J` with `i > j`.
pub fn sign(i: &MilnorIndexSet, j: &MilnorIndexSet) -> i8 {
    if i.indices().iter().any(|&a| j.contains(a)) {
        return 0;
    }
    let inversions: usize = i.indices().iter().map(|&a| j.indices().iter().filter(|&&b| a > b).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `𝒟_{n-1}(u) = Σ_j (-1)^{n-1-j} c_{n-1,j}(x_2, ..., x_n) Q_j(u)` for `j = 0..n-1`.
pub fn script_d(u: &TensorElement) -> Result<TensorElement, MilnorError> {
    let n = u.n();
    if n < 2 {
        return Err(MilnorError::ArityTooSmall(n));
    }
    let f = u.field();
    let shift: Vec<usize> = (1..n).collect();
    let mut out = TensorElement::zero(f, n);
    for j in 0..n {
        let c = dickson::dickson_c(f, n - 1, j).embed(n, &shift);
        let c = c.scale(f.sign(n - 1 - j));
        out = &out + &milnor_q(j as u32, u).mul_poly(&c);
    }
    Ok(out)
}

/// Coefficient of `Q_I dx_1 ... dx_n` when `a` is expanded over the basis
/// `{Q_I dx_1 ... dx_n : |I| = n - r}` with rational coefficients.
///
/// Returns `(numerator, denominator)` with `numerator = sign(J, I) Q_J(a)` and
/// `denominator = e_n`, where `J = S_n \ I`; when `e_n` divides the numerator
/// the reduced pair `(quotient, 1)` is returned instead.
pub fn extract_basis_coefficient(
    a: &TensorElement,
    index: &MilnorIndexSet,
) -> Result<(Polynomial, Polynomial), MilnorError> {
    let n = a.n();
    let f = a.field();
    let full = MilnorIndexSet::full(n);
    let r = match a.exterior_degree() {
        Some(r) => r,
        None if a.is_zero() => n - index.len(),
        None => return Err(MilnorError::DegreeMismatch),
    };
    if index.len() + r != n || !index.is_subset_of(&full) {
        return Err(MilnorError::IndexMismatch { index: index.indices().to_vec(), n, expected: n - r });
    }
    let j = full.difference(index);
    let image = milnor_composite(&j, a);
    let num = image.as_polynomial().ok_or(MilnorError::NotScalar)?;
    let num = num.scale(f.from_int(sign(&j, index) as i64));
    let e = dickson::dickson_e(f, n);
    match num.exact_divide(&e) {
        Ok(quotient) => Ok((quotient, Polynomial::one(f, n))),
        Err(_) => Ok((num, e)),
    }
}

/// The top exterior monomial `dx_1 ... dx_n` as a convenience for building `Q_I dx_1 ... dx_n`.
pub fn top_form(field: &crate::field::Field, n: usize) -> TensorElement {
    TensorElement::from_part(ExtIndex::full(n), Polynomial::one(field, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn ms(v: &[u32]) -> MilnorIndexSet {
        MilnorIndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_operations() {
        let f = f3();
        let d1 = TensorElement::dx(&f, 1, &[1]);
        assert_eq!(milnor_q(0, &d1), TensorElement::from_poly(Polynomial::var(&f, 1, 1)));
        let x1 = Polynomial::var(&f, 2, 1);
        let x2 = Polynomial::var(&f, 2, 2);
        let top = top_form(&f, 2);
        let expected =
            &TensorElement::dx(&f, 2, &[2]).mul_poly(&x1.pow(3)) - &TensorElement::dx(&f, 2, &[1]).mul_poly(&x2.pow(3));
        assert_eq!(milnor_q(1, &top), expected);
        assert!(milnor_q(5, &TensorElement::from_poly(x1.pow(2))).is_zero());
    }

    #[test]
    fn composites() {
        let f = f3();
        let x1 = Polynomial::var(&f, 2, 1);
        let x2 = Polynomial::var(&f, 2, 2);
        let e2 = &(&x1.pow(3) * &x2) - &(&x2.pow(3) * &x1);
        let top = top_form(&f, 2);
        assert_eq!(milnor_composite(&ms(&[0, 1]), &top), TensorElement::from_poly(e2.clone()));
        assert_eq!(milnor_composite_desc(&ms(&[0, 1]), &top), TensorElement::from_poly(-&e2));
        assert_eq!(milnor_composite(&MilnorIndexSet::empty(), &top), top);
        assert!(milnor_composite(&ms(&[0, 1]), &milnor_q(0, &top)).is_zero());
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&ms(&[0]), &ms(&[1])), 1);
        assert_eq!(sign(&ms(&[1]), &ms(&[0])), -1);
        assert_eq!(sign(&ms(&[0, 1]), &ms(&[1, 2])), 0);
        assert!(MilnorIndexSet::new(vec![1, 0]).is_err());
    }

    #[test]
    fn index_families() {
        assert_eq!(MilnorIndexSet::all_subsets(3).len(), 8);
        assert_eq!(MilnorIndexSet::proper_subsets(3).len(), 7);
        assert_eq!(MilnorIndexSet::subsets_of_size(3, 2).len(), 3);
        assert_eq!(ms(&[1]).degree_shift(3), 5);
    }

    #[test]
    fn extraction() {
        let f = f3();
        let top = top_form(&f, 2);
        let a = milnor_q(0, &top);
        let one = Polynomial::one(&f, 2);
        assert_eq!(extract_basis_coefficient(&a, &ms(&[0])).unwrap(), (one.clone(), one.clone()));
        let x1 = Polynomial::var(&f, 2, 1);
        let b = milnor_q(1, &top).mul_poly(&x1);
        assert_eq!(extract_basis_coefficient(&b, &ms(&[1])).unwrap(), (x1, one.clone()));
        assert_eq!(extract_basis_coefficient(&top, &MilnorIndexSet::empty()).unwrap(), (one.clone(), one));
        assert_eq!(
            extract_basis_coefficient(&top, &ms(&[0])).unwrap_err(),
            MilnorError::IndexMismatch { index: vec![0], n: 2, expected: 0 }
        );
    }

    #[test]
    fn script_d_on_generators() {
        let f = f3();
        for n in 2..=3 {
            let d1 = TensorElement::dx(&f, n, &[1]);
            let o = dickson::o_poly(&f, n, 1, dickson::OMethod::Product).unwrap();
            assert_eq!(script_d(&d1).unwrap(), TensorElement::from_poly(o));
            for i in 2..=n {
                assert!(script_d(&TensorElement::dx(&f, n, &[i])).unwrap().is_zero());
            }
        }
        assert_eq!(script_d(&TensorElement::one(&f, 1)).unwrap_err(), MilnorError::ArityTooSmall(1));
    }
}
