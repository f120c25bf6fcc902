use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::monomial::{Monomial, MAX_VARS};
use super::AlgebraError;
use crate::field::{Elem, Field};
use crate::matrix::Matrix;

/// A polynomial in `F_q[x_1, ..., x_n]`.
///
/// Terms are kept sorted in strictly descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    n: usize,
    terms: Vec<(Monomial, Elem)>,
}

impl Polynomial {
    pub fn zero(field: &Field, n: usize) -> Polynomial {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Polynomial { field: field.clone(), n, terms: Vec::new() }
    }

    pub fn constant(field: &Field, n: usize, c: Elem) -> Polynomial {
        let mut p = Polynomial::zero(field, n);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn one(field: &Field, n: usize) -> Polynomial {
        Polynomial::constant(field, n, field.one())
    }

    /// The variable `x_i`, `1 <= i <= n`.
    pub fn var(field: &Field, n: usize, i: usize) -> Polynomial {
        assert!((1..=n).contains(&i), "variable x_{i} out of range for n = {n}");
        Polynomial::monomial(field, n, Monomial::var(i - 1), field.one())
    }

    pub fn monomial(field: &Field, n: usize, m: Monomial, c: Elem) -> Polynomial {
        debug_assert!(m.support_len() <= n);
        let mut p = Polynomial::zero(field, n);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Canonicalizes an arbitrary list of terms (duplicates summed, zeros dropped).
    pub fn from_terms(field: &Field, n: usize, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Polynomial {
        let mut acc: FxHashMap<Monomial, Elem> = FxHashMap::default();
        for (m, c) in terms {
            assert!(m.support_len() <= n, "monomial uses more than {n} variables");
            let e = acc.entry(m).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        Polynomial::from_map(field, n, acc)
    }

    fn from_map(field: &Field, n: usize, acc: FxHashMap<Monomial, Elem>) -> Polynomial {
        let mut terms: Vec<(Monomial, Elem)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { field: field.clone(), n, terms }
    }

    /// Builds directly from terms already in strictly descending order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(field: &Field, n: usize, terms: Vec<(Monomial, Elem)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { field: field.clone(), n, terms }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (Monomial::ONE, self.field.one())
    }

    pub fn leading_term(&self) -> Option<(Monomial, Elem)> {
        self.terms.first().copied()
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.terms.binary_search_by(|(t, _)| m.cmp(t)).map(|k| self.terms[k].1).unwrap_or(Elem::ZERO)
    }

    /// Largest total degree of a term (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Largest exponent of `x_i` (`1 <= i <= n`).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(i - 1)).max().unwrap_or(0)
    }

    fn check(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::ArityMismatch { left: self.n, right: other.n });
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let adj = |c: Elem| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, adj(b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, adj(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, adj(c))));
        Polynomial { field: f.clone(), n: self.n, terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field, self.n);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms[0];
            return self.mul_term(m, c);
        }
        let f = &self.field;
        let mut acc: FxHashMap<Monomial, Elem> = FxHashMap::default();
        acc.reserve(self.terms.len() * 2 + other.terms.len() * 2);
        for &(ma, ca) in &self.terms {
            let row = f.mul_row(ca);
            for &(mb, cb) in &other.terms {
                let c = Elem(row[cb.index()]);
                let e = acc.entry(ma.mul(&mb)).or_insert(Elem::ZERO);
                *e = f.add(*e, c);
            }
        }
        Polynomial::from_map(f, self.n, acc)
    }

    /// Multiplies by the single term `c * m` (order-preserving).
    pub fn mul_term(&self, m: Monomial, c: Elem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.n);
        }
        let f = &self.field;
        let terms = self.terms.iter().map(|&(t, d)| (t.mul(&m), f.mul(c, d))).collect();
        Polynomial { field: f.clone(), n: self.n, terms }
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        self.mul_term(Monomial::ONE, c)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field, self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `f^q`, computed by scaling every exponent by `q`: Frobenius fixes each coefficient.
    pub fn q_power(&self) -> Polynomial {
        let q = self.field.q();
        let terms = self.terms.iter().map(|&(m, c)| (m.scale_exponents(q), c)).collect();
        Polynomial { field: self.field.clone(), n: self.n, terms }
    }

    /// Replaces each `x_i` by `sum_j m[i][j] x_j`. The matrix may be singular.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Polynomial, AlgebraError> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(AlgebraError::ArityMismatch { left: self.n, right: m.rows() });
        }
        if m.field() != &self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(LinearSubstitution::new(m).apply(self))
    }

    /// Sets `x_i = 0` (`1 <= i <= n`); the result stays in the same ring.
    pub fn project(&self, i: usize) -> Result<Polynomial, AlgebraError> {
        if !(1..=self.n).contains(&i) {
            return Err(AlgebraError::IndexOutOfRange { index: i, n: self.n });
        }
        let terms = self.terms.iter().copied().filter(|(m, _)| m.exponent(i - 1) == 0).collect();
        Ok(Polynomial { field: self.field.clone(), n: self.n, terms })
    }

    /// Exact quotient `self / g`, by leading-term reduction in graded-lex order.
    pub fn exact_divide(&self, g: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(g)?;
        let f = &self.field;
        let (lm, lc) = g.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = f.inv(lc).unwrap();
        let mut rem: BTreeMap<Monomial, Elem> = self.terms.iter().copied().collect();
        let mut quotient = Vec::new();
        while let Some((&m, &c)) = rem.last_key_value() {
            if !lm.divides(&m) {
                return Err(AlgebraError::NotDivisible);
            }
            let qm = lm.div_into(&m);
            let qc = f.mul(c, lc_inv);
            quotient.push((qm, qc));
            for &(gm, gc) in &g.terms {
                let key = qm.mul(&gm);
                let sub = f.mul(qc, gc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = f.sub(*e.get(), sub);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(f.neg(sub));
                    }
                }
            }
        }
        Ok(Polynomial { field: f.clone(), n: self.n, terms: quotient })
    }

    /// Re-homes the polynomial in `n_new` variables, sending `x_{k+1}` to `x_{map[k]+1}`.
    pub fn embed(&self, n_new: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.n, "variable map must cover every variable");
        assert!(map.iter().all(|&t| t < n_new));
        let terms = self.terms.iter().map(|&(m, c)| {
            let mut out = Monomial::ONE;
            for (k, &t) in map.iter().enumerate() {
                let a = m.exponent(k);
                if a > 0 {
                    out = out.with_exponent(t, out.exponent(t) + a);
                }
            }
            (out, c)
        });
        Polynomial::from_terms(&self.field, n_new, terms)
    }

    /// Drops trailing variables that do not occur, viewing the polynomial in `n_new` variables.
    pub fn restrict(&self, n_new: usize) -> Result<Polynomial, AlgebraError> {
        if let Some(i) = (n_new..self.n).find(|&i| self.degree_in(i + 1) > 0) {
            return Err(AlgebraError::IndexOutOfRange { index: i + 1, n: n_new });
        }
        Ok(Polynomial { field: self.field.clone(), n: n_new.min(self.n), terms: self.terms.clone() })
    }

    /// Splits by the exponent of `x_i`: returns `coefficient polynomials` keyed by exponent.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Vec<(Monomial, Elem)>> = BTreeMap::new();
        for &(m, c) in &self.terms {
            let a = m.exponent(i - 1);
            out.entry(a).or_default().push((m.with_exponent(i - 1, 0), c));
        }
        out.into_iter().map(|(a, terms)| (a, Polynomial::from_terms(&self.field, self.n, terms))).collect()
    }

    pub fn format(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.field;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mono = m.format(self.n, var);
                let coeff = f.format_elem(c);
                match (mono.is_empty(), c == f.one()) {
                    (true, _) => coeff,
                    (false, true) => mono,
                    (false, false) => format!("{coeff}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x"))
    }
}

// Operator forms panic on arity or field mismatch; use the `checked_*` methods to get an error.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.field.neg(self.field.one()))
    }
}

/// Applies `x_i -> sum_j m[i][j] x_j`, caching powers of the substituted linear forms.
pub struct LinearSubstitution {
    field: Field,
    n: usize,
    /// `Some((j, c))` when row `i` is the single term `c x_j`.
    simple: Vec<Option<(usize, Elem)>>,
    forms: Vec<Polynomial>,
    powers: Vec<Vec<Polynomial>>,
}

impl LinearSubstitution {
    pub fn new(m: &Matrix) -> LinearSubstitution {
        let field = m.field().clone();
        let n = m.rows();
        let mut simple = Vec::with_capacity(n);
        let mut forms = Vec::with_capacity(n);
        for i in 0..n {
            let row = m.row(i);
            let nz: Vec<(usize, Elem)> =
                row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, &c)| (j, c)).collect();
            simple.push(if nz.len() == 1 { Some(nz[0]) } else { None });
            forms.push(Polynomial::from_terms(&field, n, nz.iter().map(|&(j, c)| (Monomial::var(j), c))));
        }
        let powers = vec![Vec::new(); n];
        LinearSubstitution { field, n, simple, forms, powers }
    }

    fn power(&mut self, i: usize, a: u32) -> &Polynomial {
        let cache = &mut self.powers[i];
        if cache.is_empty() {
            cache.push(Polynomial::one(&self.field, self.n));
        }
        while cache.len() <= a as usize {
            let next = cache.last().unwrap().mul_unchecked(&self.forms[i]);
            cache.push(next);
        }
        &self.powers[i][a as usize]
    }

    pub fn apply(&mut self, p: &Polynomial) -> Polynomial {
        let f = self.field.clone();
        let n = self.n;
        let mut acc: FxHashMap<Monomial, Elem> = FxHashMap::default();
        for &(m, c) in p.terms() {
            let mut mono = Monomial::ONE;
            let mut coeff = c;
            let mut pending = Vec::new();
            for i in 0..n {
                let a = m.exponent(i);
                if a == 0 {
                    continue;
                }
                match self.simple[i] {
                    Some((j, s)) => {
                        mono = mono.with_exponent(j, mono.exponent(j) + a);
                        coeff = f.mul(coeff, f.pow(s, a as u64));
                    }
                    None => pending.push((i, a)),
                }
            }
            if coeff.is_zero() {
                continue;
            }
            // a row of zeros kills every term containing that variable
            if pending.iter().any(|&(i, _)| self.forms[i].is_zero()) {
                continue;
            }
            let mut term = Polynomial::monomial(&f, n, mono, coeff);
            for (i, a) in pending {
                let pw = self.power(i, a).clone();
                term = term.mul_unchecked(&pw);
            }
            for &(tm, tc) in term.terms() {
                let e = acc.entry(tm).or_insert(Elem::ZERO);
                *e = f.add(*e, tc);
            }
        }
        Polynomial::from_map(&f, n, acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn x(i: usize, n: usize) -> Polynomial {
        Polynomial::var(&f3(), n, i)
    }

    #[test]
    fn arithmetic_examples() {
        let f = f3();
        let x1 = x(1, 2);
        let x2 = x(2, 2);
        assert_eq!(&x1 + &x1, x1.scale(f.from_int(2)));
        let a = &x1 + &x2;
        let b = &x1 + &x2.scale(f.from_int(2));
        let expected = &x1.pow(2) + &x2.pow(2).scale(f.from_int(1));
        // (x1+x2)(x1+2x2) = x1^2 + 3x1x2 + 2x2^2 = x1^2 + 2x2^2 over F_3
        assert_eq!(&a * &b, &x1.pow(2) + &x2.pow(2).scale(f.from_int(2)));
        assert_ne!(&a * &b, expected);
        assert!(x1.scale(Elem::ZERO).is_zero());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = x(1, 2);
        let b = x(1, 3);
        assert_eq!(a.checked_add(&b).unwrap_err(), AlgebraError::ArityMismatch { left: 2, right: 3 });
        let c = Polynomial::var(&Field::prime(5).unwrap(), 2, 1);
        assert_eq!(a.checked_mul(&c).unwrap_err(), AlgebraError::FieldMismatch);
    }

    #[test]
    fn q_power_examples() {
        let x1 = x(1, 2);
        let x2 = x(2, 2);
        assert_eq!(x1.q_power(), x1.pow(3));
        let s = &x1 + &x2;
        assert_eq!(s.q_power(), &x1.pow(3) + &x2.pow(3));
        assert_eq!(s.q_power(), s.pow(3));
    }

    #[test]
    fn substitution_examples() {
        let f = f3();
        let x1 = x(1, 2);
        let g = &x1.pow(2) + &x(2, 2);
        assert_eq!(g.substitute_linear(&Matrix::identity(&f, 2)).unwrap(), g);
        let m = Matrix::from_ints(&f, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(x1.substitute_linear(&m).unwrap(), &x1 + &x(2, 2));
        let bad = Matrix::identity(&f, 3);
        assert!(matches!(x1.substitute_linear(&bad), Err(AlgebraError::ArityMismatch { .. })));
    }

    #[test]
    fn projection() {
        let s = &x(1, 2) + &x(2, 2);
        assert_eq!(s.project(2).unwrap(), x(1, 2));
        assert_eq!(s.project(3).unwrap_err(), AlgebraError::IndexOutOfRange { index: 3, n: 2 });
        let mut zero_row = Matrix::identity(&f3(), 2);
        zero_row.set(1, 1, Elem::ZERO);
        assert_eq!(s.substitute_linear(&zero_row).unwrap(), s.project(2).unwrap());
    }

    #[test]
    fn division() {
        let x1 = x(1, 2);
        let x2 = x(2, 2);
        let num = &x1.pow(2) * &x2;
        assert_eq!(num.exact_divide(&x1).unwrap(), &x1 * &x2);
        assert_eq!((&x1 + &x2).exact_divide(&x1).unwrap_err(), AlgebraError::NotDivisible);
        assert_eq!(x1.exact_divide(&Polynomial::zero(&f3(), 2)).unwrap_err(), AlgebraError::DivisionByZero);
    }

    #[test]
    fn embedding_and_coefficients() {
        let p = &x(1, 2).pow(2) + &x(2, 2);
        let e = p.embed(3, &[1, 2]);
        assert_eq!(e, &x(2, 3).pow(2) + &x(3, 3));
        let coeffs = e.coefficients_in(2);
        assert_eq!(coeffs[&2], Polynomial::one(&f3(), 3));
        assert_eq!(coeffs[&0], x(3, 3));
    }
}
