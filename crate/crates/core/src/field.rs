//! Arithmetic in finite fields `F_q`, `q = p^e` with `p` an odd prime.
//!
//! A [`Field`] owns precomputed addition and multiplication tables, so every
//! operation on raw [`Elem`] values is a table lookup. Elements of `F_{p^e}`
//! are stored as the little-endian base-`p` encoding of their coordinates in
//! the power basis `1, t, ..., t^{e-1}` of the user-supplied modulus.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 125;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("extension degree {0} requires a modulus")]
    MissingModulus(u32),
    #[error("a modulus is only accepted for extension degree > 1")]
    UnexpectedModulus,
    #[error("modulus must be a monic list of {expected} coefficients (constant term first)")]
    InvalidModulus { expected: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("field size {0} exceeds the supported maximum {MAX_FIELD_SIZE}")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid element coordinates for F_{0}")]
    InvalidElement(u32),
}

/// A raw field element; only meaningful together with the [`Field`] it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub(crate) u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// The finite field `F_q` (the `FieldSpec` of the data model).
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.p),
            Some(m) => write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.e, m),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p` (coefficient lists, low degree first).
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (k, &mk) in m[..dm].iter().enumerate() {
                a[shift + k] = (a[shift + k] + (p - lead) * mk) % p;
            }
        }
        while a.len() > dm && a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as usize) as u32);
                c /= p as usize;
            }
            divisor.push(1);
            let r = poly_rem(m.to_vec(), &divisor, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Validates the parameters and builds the arithmetic tables.
    pub fn new(p: i64, e: u32, modulus: Option<&[i64]>) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::InvalidDegree(e));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(FieldError::FieldTooLarge(q));
        }
        let p = p as u32;
        let modulus = match (e, modulus) {
            (1, None) => None,
            (1, Some(_)) => return Err(FieldError::UnexpectedModulus),
            (_, None) => return Err(FieldError::MissingModulus(e)),
            (_, Some(m)) => {
                let m: Vec<u32> = m.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(FieldError::InvalidModulus { expected: e as usize + 1 });
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                Some(m)
            }
        };
        Ok(Field(Arc::new(Self::build_tables(p, e, q as u32, modulus))))
    }

    /// The prime field `F_p`.
    pub fn prime(p: i64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    fn build_tables(p: u32, e: u32, q: u32, modulus: Option<Vec<u32>>) -> Tables {
        let qs = q as usize;
        let decode = |x: usize| -> Vec<u32> {
            let mut c = Vec::with_capacity(e as usize);
            let mut x = x;
            for _ in 0..e {
                c.push((x % p as usize) as u32);
                x /= p as usize;
            }
            c
        };
        let encode = |c: &[u32]| -> u16 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u16 };
        let coords: Vec<Vec<u32>> = (0..qs).map(decode).collect();
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in coords[a].iter().enumerate() {
                    for (j, y) in coords[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let prod = match &modulus {
                    Some(m) => poly_rem(prod, m, p),
                    None => prod,
                };
                let mut c = prod;
                c.resize(e as usize, 0);
                mul[a * qs + b] = encode(&c);
            }
        }
        let neg = (0..qs).map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16).collect();
        let inv =
            (0..qs).map(|a| if a == 0 { 0 } else { (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u16 }).collect();
        Tables { p, e, q, modulus, add, mul, neg, inv }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[a.index() * self.0.q as usize + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[a.index() * self.0.q as usize + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            None
        } else {
            Some(Elem(self.0.inv[a.index()]))
        }
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Row of the multiplication table for a fixed factor, indexed by element.
    #[inline]
    pub(crate) fn mul_row(&self, a: Elem) -> &[u16] {
        let q = self.0.q as usize;
        &self.0.mul[a.index() * q..(a.index() + 1) * q]
    }

    #[inline]
    pub(crate) fn add_table(&self) -> &[u16] {
        &self.0.add
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u16)
    }

    /// `(-1)^k`.
    pub fn sign(&self, k: usize) -> Elem {
        if k.is_multiple_of(2) {
            self.one()
        } else {
            self.neg(self.one())
        }
    }

    /// Coordinates of `a` in the power basis, constant coordinate first.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut x = a.0 as u32;
        (0..self.0.e)
            .map(|_| {
                let d = x % self.0.p;
                x /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[i64]) -> Result<Elem, FieldError> {
        if c.len() != self.0.e as usize {
            return Err(FieldError::InvalidElement(self.0.q));
        }
        let p = self.0.p as i64;
        Ok(Elem(c.iter().rev().fold(0i64, |acc, &d| acc * p + d.rem_euclid(p)) as u16))
    }

    /// The power-basis element `t^k` (for `e = 1` only `k = 0` is meaningful).
    pub fn power_basis(&self, k: u32) -> Elem {
        if self.0.e == 1 {
            return self.pow(self.one(), k as u64);
        }
        let t = Elem(self.0.p as u16);
        self.pow(t, k as u64)
    }

    /// Smallest (by encoding) generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        let q = self.0.q as u64;
        (1..self.0.q as u16)
            .map(Elem)
            .find(|&a| {
                let mut x = a;
                let mut order = 1;
                while x != self.one() {
                    x = self.mul(x, a);
                    order += 1;
                }
                order == q - 1
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// All `q` elements, ordered lexicographically by coordinate list.
    pub fn elements(&self) -> Vec<Elem> {
        let mut all: Vec<(Vec<u32>, Elem)> = (0..self.0.q as u16).map(|i| (self.coeffs(Elem(i)), Elem(i))).collect();
        all.sort();
        all.into_iter().map(|(_, a)| a).collect()
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement { field: self.clone(), value: a }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, e: self.0.e, modulus: self.0.modulus.clone() }
    }

    /// Renders an element: an integer for prime fields, a polynomial in `t` otherwise.
    pub fn format_elem(&self, a: Elem) -> String {
        if self.0.e == 1 {
            return a.0.to_string();
        }
        let parts: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (k, 1) => format!("t^{k}"),
                (k, c) => format!("{c}t^{k}"),
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            format!("({})", parts.join("+"))
        }
    }
}

/// Serialized form `{"p": int, "e": int, "modulus": [int] | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field, FieldError> {
        let m: Option<Vec<i64>> = self.modulus.as_ref().map(|m| m.iter().map(|&c| c as i64).collect());
        Field::new(self.p as i64, self.e, m.as_deref())
    }
}

/// An element of `F_q` bundled with its field; operations check that both
/// operands live in the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field.inv(self.value).map(|v| self.with(v)).ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        self.with(self.field.pow(self.value, k))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.field.format_elem(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}
