use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::monomial::MAX_VARS;
use super::polynomial::{LinearSubstitution, Polynomial};
use super::AlgebraError;
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// A subset `J` of `{1, ..., n}`, naming the exterior monomial `dx_J`.
///
/// Stored as a bitmask (bit `j - 1` for `dx_j`) and ordered lexicographically
/// by the ascending index list, so `[] < [1] < [1, 2] < [2]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExtIndex(u16);

impl ExtIndex {
    pub const EMPTY: ExtIndex = ExtIndex(0);

    /// Builds from 1-based indices in any order; duplicates collapse.
    pub fn from_indices(indices: &[usize]) -> ExtIndex {
        let mut mask = 0u16;
        for &j in indices {
            assert!((1..=MAX_VARS).contains(&j), "exterior index {j} out of range");
            mask |= 1 << (j - 1);
        }
        ExtIndex(mask)
    }

    /// All of `{1, ..., n}`.
    pub fn full(n: usize) -> ExtIndex {
        ExtIndex(((1u32 << n) - 1) as u16)
    }

    pub fn single(j: usize) -> ExtIndex {
        ExtIndex::from_indices(&[j])
    }

    pub fn from_mask(mask: u16) -> ExtIndex {
        ExtIndex(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, j: usize) -> bool {
        j >= 1 && self.0 & (1 << (j - 1)) != 0
    }

    /// Ascending 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn max_index(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    pub fn remove(self, j: usize) -> ExtIndex {
        ExtIndex(self.0 & !(1 << (j - 1)))
    }

    /// Sign and index of `dx_self ∧ dx_other`, or `None` when they overlap.
    pub fn wedge(self, other: ExtIndex) -> Option<(bool, ExtIndex)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            inversions += (self.0 >> (b + 1)).count_ones();
            rest &= rest - 1;
        }
        Some((inversions % 2 == 1, ExtIndex(self.0 | other.0)))
    }

    /// All `r`-subsets of `{1, ..., n}` in lexicographic order.
    pub fn subsets(n: usize, r: usize) -> Vec<ExtIndex> {
        let mut out: Vec<ExtIndex> =
            (0u32..1 << n).filter(|m| m.count_ones() as usize == r).map(|m| ExtIndex(m as u16)).collect();
        out.sort();
        out
    }
}

impl Ord for ExtIndex {
    fn cmp(&self, other: &ExtIndex) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &ExtIndex) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// An element of `P_n ⊗ E_n`: a polynomial coefficient for each exterior monomial `dx_J`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    field: Field,
    n: usize,
    parts: BTreeMap<ExtIndex, Polynomial>,
}

impl TensorElement {
    pub fn zero(field: &Field, n: usize) -> TensorElement {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        TensorElement { field: field.clone(), n, parts: BTreeMap::new() }
    }

    pub fn one(field: &Field, n: usize) -> TensorElement {
        TensorElement::from_poly(Polynomial::one(field, n))
    }

    pub fn from_poly(p: Polynomial) -> TensorElement {
        TensorElement::from_part(ExtIndex::EMPTY, p)
    }

    /// `p · dx_J`.
    pub fn from_part(j: ExtIndex, p: Polynomial) -> TensorElement {
        assert!(j.max_index() <= p.n(), "exterior index exceeds n");
        let mut t = TensorElement::zero(p.field(), p.n());
        if !p.is_zero() {
            t.parts.insert(j, p);
        }
        t
    }

    /// The ordered product `dx_{j_1} dx_{j_2} ...` of 1-based indices, sign included.
    pub fn dx(field: &Field, n: usize, indices: &[usize]) -> TensorElement {
        let mut t = TensorElement::one(field, n);
        for &j in indices {
            assert!((1..=n).contains(&j), "dx_{j} out of range for n = {n}");
            t = t.wedge(&TensorElement::from_part(ExtIndex::single(j), Polynomial::one(field, n)));
        }
        t
    }

    /// `dx_1 dx_2 ... dx_n`.
    pub fn top(field: &Field, n: usize) -> TensorElement {
        TensorElement::from_part(ExtIndex::full(n), Polynomial::one(field, n))
    }

    pub fn from_parts(
        field: &Field,
        n: usize,
        parts: impl IntoIterator<Item = (ExtIndex, Polynomial)>,
    ) -> TensorElement {
        let mut t = TensorElement::zero(field, n);
        for (j, p) in parts {
            assert_eq!(p.n(), n);
            t.add_part(j, &p);
        }
        t
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &BTreeMap<ExtIndex, Polynomial> {
        &self.parts
    }

    pub fn part(&self, j: ExtIndex) -> Option<&Polynomial> {
        self.parts.get(&j)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.parts.values().map(|p| p.len()).sum()
    }

    /// The polynomial part when the element has exterior degree 0 throughout.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self.parts.len() {
            0 => Some(Polynomial::zero(&self.field, self.n)),
            1 => self.parts.get(&ExtIndex::EMPTY).cloned(),
            _ => None,
        }
    }

    /// The common exterior degree of all parts, if there is one (zero has none).
    pub fn exterior_degree(&self) -> Option<usize> {
        let mut it = self.parts.keys().map(|j| j.len());
        let first = it.next()?;
        it.all(|r| r == first).then_some(first)
    }

    /// The common cohomological degree `2·deg(m) + |J|`, if homogeneous and nonzero.
    pub fn coh_degree(&self) -> Option<u32> {
        let comps = self.coh_components();
        match comps.len() {
            1 => comps.keys().next().copied(),
            _ => None,
        }
    }

    pub fn coh_components(&self) -> BTreeMap<u32, TensorElement> {
        let mut out: BTreeMap<u32, TensorElement> = BTreeMap::new();
        for (&j, p) in &self.parts {
            let mut by_deg: BTreeMap<u32, Vec<_>> = BTreeMap::new();
            for &(m, c) in p.terms() {
                by_deg.entry(2 * m.degree() + j.len() as u32).or_default().push((m, c));
            }
            for (d, terms) in by_deg {
                let part = Polynomial::from_sorted_terms(&self.field, self.n, terms);
                out.entry(d).or_insert_with(|| TensorElement::zero(&self.field, self.n)).parts.insert(j, part);
            }
        }
        out
    }

    fn check(&self, other: &TensorElement) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::ArityMismatch { left: self.n, right: other.n });
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    /// Adds `p · dx_J` in place.
    pub fn add_part(&mut self, j: ExtIndex, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        match self.parts.get_mut(&j) {
            Some(q) => {
                let s = &*q + p;
                if s.is_zero() {
                    self.parts.remove(&j);
                } else {
                    *q = s;
                }
            }
            None => {
                self.parts.insert(j, p.clone());
            }
        }
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&j, p) in &other.parts {
            out.add_part(j, p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: Elem) -> TensorElement {
        let parts =
            if c.is_zero() { BTreeMap::new() } else { self.parts.iter().map(|(&j, p)| (j, p.scale(c))).collect() };
        TensorElement { field: self.field.clone(), n: self.n, parts }
    }

    /// Multiplies every part by the polynomial `f`.
    pub fn mul_poly(&self, f: &Polynomial) -> TensorElement {
        assert_eq!(f.n(), self.n, "arity mismatch");
        let mut out = TensorElement::zero(&self.field, self.n);
        for (&j, p) in &self.parts {
            let prod = p * f;
            if !prod.is_zero() {
                out.parts.insert(j, prod);
            }
        }
        out
    }

    pub fn checked_wedge(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check(other)?;
        let mut out = TensorElement::zero(&self.field, self.n);
        for (&a, p) in &self.parts {
            for (&b, q) in &other.parts {
                if let Some((neg, k)) = a.wedge(b) {
                    let mut prod = p * q;
                    if neg {
                        prod = -&prod;
                    }
                    out.add_part(k, &prod);
                }
            }
        }
        Ok(out)
    }

    /// Panics on arity or field mismatch; see [`TensorElement::checked_wedge`].
    pub fn wedge(&self, other: &TensorElement) -> TensorElement {
        self.checked_wedge(other).expect("wedge product")
    }

    /// Applies the substitution `x_i -> Σ_j h[i][j] x_j`, `dx_i -> Σ_j h[i][j] dx_j`.
    ///
    /// With `h = g^{-1}` this is the action of `g`.
    pub fn transform(&self, h: &Matrix) -> Result<TensorElement, AlgebraError> {
        if h.rows() != self.n || h.cols() != self.n {
            return Err(AlgebraError::ArityMismatch { left: self.n, right: h.rows() });
        }
        if h.field() != &self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let mut subst = LinearSubstitution::new(h);
        let mut out = TensorElement::zero(&self.field, self.n);
        for (&j, p) in &self.parts {
            let image = subst.apply(p);
            if image.is_zero() {
                continue;
            }
            let rows: Vec<usize> = j.indices().iter().map(|i| i - 1).collect();
            for k in ExtIndex::subsets(self.n, j.len()) {
                let cols: Vec<usize> = k.indices().iter().map(|i| i - 1).collect();
                let minor = h.minor(&rows, &cols);
                if !minor.is_zero() {
                    out.add_part(k, &image.scale(minor));
                }
            }
        }
        Ok(out)
    }

    /// The action of an invertible matrix `g`: the contragredient substitution by `g^{-1}`.
    pub fn act(&self, g: &Matrix) -> Result<TensorElement, AlgebraError> {
        if !g.is_square() || g.rows() != self.n {
            return Err(AlgebraError::ArityMismatch { left: self.n, right: g.rows() });
        }
        let inv = g.inverse().ok_or(AlgebraError::SingularMatrix)?;
        self.transform(&inv)
    }

    /// Sets `x_i = 0` in every part (the exterior generators are untouched).
    pub fn project_poly(&self, i: usize) -> Result<TensorElement, AlgebraError> {
        let mut out = TensorElement::zero(&self.field, self.n);
        for (&j, p) in &self.parts {
            let q = p.project(i)?;
            if !q.is_zero() {
                out.parts.insert(j, q);
            }
        }
        Ok(out)
    }

    /// Re-homes the element in `n_new` variables, sending index `k + 1` to `map[k] + 1`.
    ///
    /// The map must be increasing so that exterior parts stay in normal form.
    pub fn embed(&self, n_new: usize, map: &[usize]) -> TensorElement {
        assert!(map.windows(2).all(|w| w[0] < w[1]), "embedding map must be increasing");
        let mut out = TensorElement::zero(&self.field, n_new);
        for (&j, p) in &self.parts {
            let k = ExtIndex::from_indices(&j.indices().iter().map(|&i| map[i - 1] + 1).collect::<Vec<_>>());
            out.parts.insert(k, p.embed(n_new, map));
        }
        out
    }

    pub fn format(&self, var: &str) -> String {
        if self.parts.is_empty() {
            return "0".to_string();
        }
        let pieces: Vec<String> = self
            .parts
            .iter()
            .map(|(j, p)| {
                if j.is_empty() {
                    return p.format(var);
                }
                let dx: Vec<String> = j.indices().iter().map(|i| format!("d{var}{i}")).collect();
                let dx = dx.join("*");
                if p.is_one() {
                    dx
                } else {
                    format!("({})*{dx}", p.format(var))
                }
            })
            .collect();
        pieces.join(" + ")
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x"))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x"))
    }
}

impl From<Polynomial> for TensorElement {
    fn from(p: Polynomial) -> TensorElement {
        TensorElement::from_poly(p)
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.checked_add(rhs).expect("tensor addition")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.checked_sub(rhs).expect("tensor subtraction")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(self.field.neg(self.field.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn ext_index_order_and_sign() {
        let a = ExtIndex::from_indices(&[1]);
        let b = ExtIndex::from_indices(&[1, 2]);
        let c = ExtIndex::from_indices(&[2]);
        assert!(ExtIndex::EMPTY < a && a < b && b < c);
        assert_eq!(a.wedge(c), Some((false, b)));
        assert_eq!(c.wedge(a), Some((true, b)));
        assert_eq!(a.wedge(a), None);
        assert_eq!(ExtIndex::subsets(3, 2).len(), 3);
    }

    #[test]
    fn wedge_examples() {
        let f = f3();
        let d1 = TensorElement::dx(&f, 2, &[1]);
        let d2 = TensorElement::dx(&f, 2, &[2]);
        assert_eq!(d1.wedge(&d2), TensorElement::top(&f, 2));
        assert_eq!(d2.wedge(&d1), -&TensorElement::top(&f, 2));
        assert!(d1.wedge(&d1).is_zero());
    }

    #[test]
    fn action_examples() {
        let f = f3();
        let x1 = TensorElement::from_poly(Polynomial::var(&f, 2, 1));
        let h = Matrix::from_ints(&f, &[vec![1, 1], vec![0, 1]]);
        let x2 = TensorElement::from_poly(Polynomial::var(&f, 2, 2));
        assert_eq!(x1.transform(&h).unwrap(), &x1 + &x2);
        let g = Matrix::from_ints(&f, &[vec![2, 0], vec![0, 1]]);
        let top = TensorElement::top(&f, 2);
        assert_eq!(top.act(&g).unwrap(), top.scale(f.from_int(2)));
        assert_eq!(top.act(&Matrix::identity(&f, 2)).unwrap(), top);
    }

    #[test]
    fn components() {
        let f = f3();
        let u = &TensorElement::from_poly(Polynomial::var(&f, 2, 1)) + &TensorElement::dx(&f, 2, &[1]);
        let comps = u.coh_components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert!(TensorElement::zero(&f, 2).coh_components().is_empty());
        assert_eq!(u.coh_degree(), None);
    }
}
