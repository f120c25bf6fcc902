use std::cmp::Ordering;
use std::fmt;

/// Maximum number of polynomial variables.
pub const MAX_VARS: usize = 8;

const LANE_BITS: u32 = 16;

/// A monomial `x_1^{a_1} ... x_n^{a_n}` with up to [`MAX_VARS`] variables.
///
/// Exponents are packed into 16-bit lanes of a `u128`, `x_1` in the most
/// significant lane, so integer comparison of the packed word is lexicographic
/// comparison of the exponent vectors. The derived ordering (total degree
/// first, then packed word) is graded lexicographic with `x_1 > x_2 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    degree: u32,
    packed: u128,
}

#[inline]
fn shift(var: usize) -> u32 {
    LANE_BITS * (MAX_VARS - 1 - var) as u32
}

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, packed: 0 };

    /// Panics if an exponent or the total degree leaves the 16-bit range.
    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Monomial::ONE;
        for (i, &a) in exps.iter().enumerate() {
            m = m.with_exponent(i, a);
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        Monomial::ONE.with_exponent(i, 1)
    }

    /// `x_i^a` for zero-based variable index `i`.
    pub fn var_pow(i: usize, a: u32) -> Monomial {
        Monomial::ONE.with_exponent(i, a)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.packed >> shift(i)) & 0xffff) as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    /// Index one past the last variable with a nonzero exponent.
    pub fn support_len(&self) -> usize {
        (0..MAX_VARS).rev().find(|&i| self.exponent(i) != 0).map_or(0, |i| i + 1)
    }

    pub fn with_exponent(&self, i: usize, a: u32) -> Monomial {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        assert!(a <= u16::MAX as u32, "exponent {a} overflows");
        let old = self.exponent(i);
        let degree = self.degree - old + a;
        assert!(degree <= u16::MAX as u32, "total degree {degree} overflows");
        let cleared = self.packed & !(0xffffu128 << shift(i));
        Monomial { degree, packed: cleared | ((a as u128) << shift(i)) }
    }

    /// Product; panics if the total degree would exceed 65535.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let degree = self.degree + other.degree;
        assert!(degree <= u16::MAX as u32, "total degree {degree} overflows");
        Monomial { degree, packed: self.packed + other.packed }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { degree: other.degree - self.degree, packed: other.packed - self.packed }
    }

    /// Raises every exponent by the factor `k`.
    pub fn scale_exponents(&self, k: u32) -> Monomial {
        let degree = self.degree as u64 * k as u64;
        assert!(degree <= u16::MAX as u64, "total degree {degree} overflows");
        Monomial { degree: degree as u32, packed: self.packed * k as u128 }
    }

    /// Compares in graded lexicographic order.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.cmp(other)
    }

    pub fn format(&self, n: usize, var: &str) -> String {
        let parts: Vec<String> = (0..n)
            .filter(|&i| self.exponent(i) > 0)
            .map(|i| match self.exponent(i) {
                1 => format!("{var}{}", i + 1),
                a => format!("{var}{}^{a}", i + 1),
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(self.support_len()))
    }
}

/// All monomials of total degree `k` in `n` variables, in descending graded-lex order.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(remaining);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for a in (0..=remaining).rev() {
            cur.push(a);
            rec(n, i + 1, remaining - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(n, 0, k, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing() {
        let m = Monomial::from_exponents(&[3, 0, 7]);
        assert_eq!(m.degree(), 10);
        assert_eq!(m.exponents(3), vec![3, 0, 7]);
        assert_eq!(m.support_len(), 3);
        let prod = m.mul(&Monomial::var(1));
        assert_eq!(prod.exponents(3), vec![3, 1, 7]);
        assert!(m.divides(&prod));
        assert_eq!(m.div_into(&prod), Monomial::var(1));
        assert_eq!(m.scale_exponents(3).exponents(3), vec![9, 0, 21]);
    }

    #[test]
    fn graded_lex() {
        let x1 = Monomial::var(0);
        let x2 = Monomial::var(1);
        assert!(x1 > x2);
        assert!(Monomial::var_pow(1, 2) > x1);
        assert!(Monomial::from_exponents(&[1, 1]) > Monomial::var_pow(1, 2));
    }

    #[test]
    fn enumeration_is_descending_and_complete() {
        let ms = monomials_of_degree(3, 4);
        assert_eq!(ms.len(), 15);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::ONE]);
    }

    #[test]
    #[should_panic(expected = "overflows")]
    fn degree_overflow_panics() {
        let big = Monomial::var_pow(0, 40000);
        let _ = big.mul(&big);
    }
}
