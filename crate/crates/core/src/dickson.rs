//! Dickson invariants, the polynomials `f_n(X)` and `Δ_n(X)`, orbit products
//! `𝒪`, and Mùi invariants in Milnor-operation and determinant form.
//!
//! Everything is built from Milnor operations on the top form
//! `dx_1 ... dx_n`; the product formulas are kept as independent oracles.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::algebra::{ExtIndex, Monomial, Polynomial, TensorElement};
use crate::field::{Elem, Field, FieldSpec};
use crate::matrix::Matrix;
use crate::milnor::{milnor_composite, top_form, MilnorIndexSet};

/// Largest number of linear factors a product formula may expand.
pub const PRODUCT_LIMIT: u64 = 243;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DicksonError {
    #[error("product over {factors} linear factors exceeds the limit of {PRODUCT_LIMIT}")]
    ProductTooLarge { factors: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FMethod {
    Recursive,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OMethod {
    Product,
    DicksonSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremCase {
    Sl,
    Gl,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum MemoKey {
    E(FieldSpec, usize),
    C(FieldSpec, usize, usize),
}

fn memo() -> &'static Mutex<HashMap<MemoKey, Polynomial>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Polynomial>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn memoized(key: MemoKey, build: impl FnOnce() -> Polynomial) -> Polynomial {
    if let Some(p) = memo().lock().unwrap().get(&key) {
        return p.clone();
    }
    let p = build();
    memo().lock().unwrap().insert(key, p.clone());
    p
}

/// `e_n = Q_0 ... Q_{n-1} dx_1 ... dx_n`, a polynomial in `x_1, ..., x_n`.
pub fn dickson_e(field: &Field, n: usize) -> Polynomial {
    memoized(MemoKey::E(field.spec(), n), || {
        milnor_composite(&MilnorIndexSet::full(n), &top_form(field, n))
            .as_polynomial()
            .expect("full composite is a polynomial")
    })
}

/// `c_{n,i}`, defined by `Q_0 ... Q̂_i ... Q_n dx_1 ... dx_n = e_n c_{n,i}`; `c_{n,n} = 1`.
pub fn dickson_c(field: &Field, n: usize, i: usize) -> Polynomial {
    assert!(i <= n, "c_{{n,i}} needs i <= n");
    if i == n {
        return Polynomial::one(field, n);
    }
    memoized(MemoKey::C(field.spec(), n, i), || {
        let index = MilnorIndexSet::full(n + 1).difference(&MilnorIndexSet::new(vec![i as u32]).unwrap());
        let num = milnor_composite(&index, &top_form(field, n)).as_polynomial().expect("polynomial");
        num.exact_divide(&dickson_e(field, n)).expect("e_n divides the omitted composite")
    })
}

/// A polynomial in `x_1, ..., x_n` and an extra variable `X = x_{n+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariateOverP {
    poly: Polynomial,
}

impl UnivariateOverP {
    pub fn new(poly: Polynomial) -> UnivariateOverP {
        assert!(poly.n() >= 1);
        UnivariateOverP { poly }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Number of coefficient variables (`X` excluded).
    pub fn n(&self) -> usize {
        self.poly.n() - 1
    }

    pub fn x_degree(&self) -> u32 {
        self.poly.degree_in(self.poly.n())
    }

    /// Coefficient of `X^k` as a polynomial in `x_1, ..., x_n`.
    pub fn coefficient(&self, k: u32) -> Polynomial {
        let n = self.n();
        self.poly
            .coefficients_in(n + 1)
            .remove(&k)
            .map(|c| c.restrict(n).expect("X removed"))
            .unwrap_or_else(|| Polynomial::zero(self.poly.field(), n))
    }

    pub fn is_monic(&self) -> bool {
        self.coefficient(self.x_degree()).is_one()
    }

    /// Substitutes `X = x_i`, giving a polynomial in `x_1, ..., x_n`.
    pub fn evaluate_at_var(&self, i: usize) -> Polynomial {
        let n = self.n();
        let f = self.poly.field();
        let mut m = Matrix::identity(f, n + 1);
        m.set(n, n, Elem::ZERO);
        m.set(n, i - 1, f.one());
        self.poly.substitute_linear(&m).unwrap().restrict(n).expect("X removed")
    }
}

/// Replaces `X = x_{n+1}` with `x_i` inside `n + 1` variables.
fn rename_x(p: &Polynomial, i: usize) -> Polynomial {
    let f = p.field();
    let n1 = p.n();
    let mut m = Matrix::identity(f, n1);
    m.set(n1 - 1, n1 - 1, Elem::ZERO);
    m.set(n1 - 1, i - 1, f.one());
    p.substitute_linear(&m).unwrap()
}

fn check_product(q: u32, n: usize) -> Result<(), DicksonError> {
    let factors = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if factors > PRODUCT_LIMIT {
        return Err(DicksonError::ProductTooLarge { factors });
    }
    Ok(())
}

/// `∏ (target + v)` over all `v` in the `F_q`-span of `span` (1-based variable indices).
fn span_product(field: &Field, nvars: usize, target: usize, span: &[usize]) -> Polynomial {
    let mut acc = Polynomial::one(field, nvars);
    let elements = field.elements();
    let q = elements.len();
    let total = q.pow(span.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut terms = vec![(Monomial::var(target - 1), field.one())];
        for &s in span {
            let c = elements[rest % q];
            rest /= q;
            terms.push((Monomial::var(s - 1), c));
        }
        acc = &acc * &Polynomial::from_terms(field, nvars, terms);
    }
    acc
}

/// `∏ (x_target + v)` over the `F_q`-span of the given variables, in `nvars` variables.
pub fn orbit_product(field: &Field, nvars: usize, target: usize, span: &[usize]) -> Result<Polynomial, DicksonError> {
    check_product(field.q(), span.len())?;
    if target == 0 || target > nvars || span.iter().any(|&v| v == 0 || v > nvars) {
        return Err(DicksonError::InvalidArgument(format!("variables out of range for n = {nvars}")));
    }
    Ok(span_product(field, nvars, target, span))
}

/// `f_n(X) = ∏_{v ∈ F_q{x_1..x_n}} (X + v)`, with `X` as variable `n + 1`.
pub fn f_poly(field: &Field, n: usize, method: FMethod) -> Result<UnivariateOverP, DicksonError> {
    let nv = n + 1;
    match method {
        FMethod::Product => {
            check_product(field.q(), n)?;
            let span: Vec<usize> = (1..=n).collect();
            Ok(UnivariateOverP::new(span_product(field, nv, nv, &span)))
        }
        FMethod::Recursive => {
            // f_k(X) = f_{k-1}(X)^q - f_{k-1}(X) f_{k-1}(x_k)^{q-1}
            let mut fk = Polynomial::var(field, nv, nv);
            for k in 1..=n {
                let at_xk = rename_x(&fk, k).pow(field.q() - 1);
                fk = &fk.q_power() - &(&fk * &at_xk);
            }
            Ok(UnivariateOverP::new(fk))
        }
    }
}

/// `Δ_n(X) = (-1)^n Q_0 ... Q_n dx_1 ... dx_n dX`, computed in `n + 1` variables.
pub fn delta_poly(field: &Field, n: usize) -> UnivariateOverP {
    let top = top_form(field, n + 1);
    let d = milnor_composite(&MilnorIndexSet::full(n + 1), &top).as_polynomial().expect("polynomial");
    UnivariateOverP::new(d.scale(field.sign(n)))
}

/// `Σ_j (-1)^{m-j} c_{m,j}(vars) x_target^{q^j}`: the Dickson form of `∏_{v ∈ F_q{vars}} (x_target + v)`.
fn dickson_sum(field: &Field, nvars: usize, target: usize, vars: &[usize]) -> Polynomial {
    let m = vars.len();
    let map: Vec<usize> = vars.iter().map(|v| v - 1).collect();
    let mut acc = Polynomial::zero(field, nvars);
    let q = field.q();
    for j in 0..=m {
        let c = dickson_c(field, m, j).embed(nvars, &map);
        let term = c.mul_term(Monomial::var_pow(target - 1, q.pow(j as u32)), field.sign(m - j));
        acc = &acc + &term;
    }
    acc
}

fn check_o_args(n: usize, i: usize) -> Result<(), DicksonError> {
    if n < 2 || !(1..=n).contains(&i) {
        return Err(DicksonError::InvalidArgument(format!("need n >= 2 and 1 <= i <= n, got n = {n}, i = {i}")));
    }
    Ok(())
}

/// `𝒪_{n-1}(x_i) = ∏_{v ∈ F_q{x_2..x_n}} (x_i + v)` in `n` variables.
pub fn o_poly(field: &Field, n: usize, i: usize, method: OMethod) -> Result<Polynomial, DicksonError> {
    check_o_args(n, i)?;
    let span: Vec<usize> = (2..=n).collect();
    match method {
        OMethod::Product => {
            check_product(field.q(), n - 1)?;
            Ok(span_product(field, n, i, &span))
        }
        OMethod::DicksonSum => Ok(dickson_sum(field, n, i, &span)),
    }
}

/// `𝒪_{n-2}(x_i) = ∏_{v ∈ F_q{x_2..x_{n-1}}} (x_i + v)` in `n` variables; `x_i` when `n = 2`.
pub fn o_prev(field: &Field, n: usize, i: usize, method: OMethod) -> Result<Polynomial, DicksonError> {
    check_o_args(n, i)?;
    let span: Vec<usize> = (2..n).collect();
    match method {
        OMethod::Product => {
            check_product(field.q(), n - 2)?;
            Ok(span_product(field, n, i, &span))
        }
        OMethod::DicksonSum => Ok(dickson_sum(field, n, i, &span)),
    }
}

fn check_increasing(i_list: &[u32]) -> Result<(), DicksonError> {
    if i_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DicksonError::InvalidArgument(format!("index list {i_list:?} must be strictly increasing")));
    }
    Ok(())
}

/// Signed monomials of `det(x_{v_j}^{q^{i_l}})` by cofactor expansion along the first row.
fn det_terms(q: u32, i_list: &[u32], vars: &[usize]) -> Vec<(Monomial, bool)> {
    if i_list.is_empty() {
        return vec![(Monomial::ONE, false)];
    }
    let e = q.pow(i_list[0]);
    let mut out = Vec::new();
    for (col, &v) in vars.iter().enumerate() {
        let rest: Vec<usize> = vars.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, &w)| w).collect();
        for (m, neg) in det_terms(q, &i_list[1..], &rest) {
            out.push((m.mul(&Monomial::var_pow(v - 1, e)), neg ^ (col % 2 == 1)));
        }
    }
    out
}

/// The determinant `[i_1, ..., i_k](x_{v_1}, ..., x_{v_k})` in `n` variables.
pub fn mui_det_in(field: &Field, n: usize, i_list: &[u32], vars: &[usize]) -> Result<Polynomial, DicksonError> {
    check_increasing(i_list)?;
    if i_list.len() != vars.len() || vars.iter().any(|&v| v == 0 || v > n) {
        return Err(DicksonError::InvalidArgument(format!(
            "{} indices for variables {vars:?} in n = {n}",
            i_list.len()
        )));
    }
    let minus = field.neg(field.one());
    let terms =
        det_terms(field.q(), i_list, vars).into_iter().map(|(m, neg)| (m, if neg { minus } else { field.one() }));
    Ok(Polynomial::from_terms(field, n, terms))
}

/// `[i_1, ..., i_k] = det(x_j^{q^{i_l}})` over `x_1, ..., x_k`, as a polynomial in `n >= k` variables.
pub fn mui_det(field: &Field, n: usize, i_list: &[u32]) -> Result<Polynomial, DicksonError> {
    let vars: Vec<usize> = (1..=i_list.len()).collect();
    mui_det_in(field, n, i_list, &vars)
}

/// `[r : i_1, ..., i_{n-r}] = Σ_J sgn(σ_J) dx_J [i_1, ..., i_{n-r}](x_{J^c})` over `r`-subsets `J`.
pub fn mui_bracket(field: &Field, r: usize, i_list: &[u32], n: usize) -> Result<TensorElement, DicksonError> {
    if r >= n || i_list.len() + r != n {
        return Err(DicksonError::InvalidArgument(format!(
            "need 0 <= r < n and {} indices, got r = {r}",
            n.saturating_sub(r)
        )));
    }
    let mut out = TensorElement::zero(field, n);
    for j in ExtIndex::subsets(n, r) {
        let chosen = j.indices();
        let rest: Vec<usize> = (1..=n).filter(|v| !j.contains(*v)).collect();
        let parity: usize = chosen.iter().enumerate().map(|(k, &v)| v - (k + 1)).sum();
        let det = mui_det_in(field, n, i_list, &rest)?.scale(field.sign(parity));
        out.add_part(j, &det);
    }
    Ok(out)
}

/// `Q_I dx_1 ... dx_n`.
pub fn mui_q(field: &Field, index: &MilnorIndexSet, n: usize) -> TensorElement {
    milnor_composite(index, &top_form(field, n))
}

/// Module bases: `{1} ∪ {Q_I dx_1..dx_n}` for SL, `{1} ∪ {e_n^{q-2} Q_I dx_1..dx_n}` for GL, `I ∈ A'_n`.
pub fn theorem_basis(field: &Field, case: TheoremCase, n: usize) -> Vec<TensorElement> {
    let twist = match case {
        TheoremCase::Sl => Polynomial::one(field, n),
        TheoremCase::Gl => dickson_e(field, n).pow(field.q() - 2),
    };
    let mut out = vec![TensorElement::one(field, n)];
    for index in MilnorIndexSet::proper_subsets(n) {
        out.push(mui_q(field, &index, n).mul_poly(&twist));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn x(f: &Field, n: usize, i: usize) -> Polynomial {
        Polynomial::var(f, n, i)
    }

    #[test]
    fn small_dickson_values() {
        let f = f3();
        assert_eq!(dickson_e(&f, 1), x(&f, 1, 1));
        let e2 = &(&x(&f, 2, 1).pow(3) * &x(&f, 2, 2)) - &(&x(&f, 2, 2).pow(3) * &x(&f, 2, 1));
        assert_eq!(dickson_e(&f, 2), e2);
        assert_eq!(dickson_c(&f, 2, 0), e2.pow(2));
        assert!(dickson_c(&f, 3, 3).is_one());
        assert_eq!(dickson_e(&f, 3).degree(), 13);
        assert_eq!(dickson_c(&f, 3, 1).degree(), 24);
    }

    #[test]
    fn f_and_delta() {
        let f = f3();
        let f1 = f_poly(&f, 1, FMethod::Product).unwrap();
        let expected = &x(&f, 2, 2).pow(3) - &(&x(&f, 2, 1).pow(2) * &x(&f, 2, 2));
        assert_eq!(f1.poly(), &expected);
        assert_eq!(f_poly(&f, 1, FMethod::Recursive).unwrap(), f1);
        let delta = delta_poly(&f, 1);
        assert_eq!(delta.poly(), &(&x(&f, 2, 1) * &expected));
        assert_eq!(f_poly(&f, 2, FMethod::Recursive).unwrap(), f_poly(&f, 2, FMethod::Product).unwrap());
        assert!(matches!(f_poly(&f, 6, FMethod::Product), Err(DicksonError::ProductTooLarge { .. })));
    }

    #[test]
    fn orbit_products() {
        let f = f3();
        let o = o_poly(&f, 2, 1, OMethod::Product).unwrap();
        assert_eq!(o, &x(&f, 2, 1).pow(3) - &(&x(&f, 2, 2).pow(2) * &x(&f, 2, 1)));
        assert_eq!(o_poly(&f, 2, 1, OMethod::DicksonSum).unwrap(), o);
        assert!(o_poly(&f, 3, 2, OMethod::Product).unwrap().is_zero());
        assert_eq!(o_prev(&f, 2, 1, OMethod::Product).unwrap(), x(&f, 2, 1));
        assert_eq!(o_prev(&f, 2, 1, OMethod::DicksonSum).unwrap(), x(&f, 2, 1));
    }

    #[test]
    fn determinants() {
        let f = f3();
        assert_eq!(mui_det(&f, 1, &[0]).unwrap(), x(&f, 1, 1));
        let d = mui_det(&f, 2, &[0, 1]).unwrap();
        assert_eq!(d, &(&x(&f, 2, 1) * &x(&f, 2, 2).pow(3)) - &(&x(&f, 2, 2) * &x(&f, 2, 1).pow(3)));
        let b = mui_bracket(&f, 1, &[0], 2).unwrap();
        let expected = &TensorElement::dx(&f, 2, &[1]).mul_poly(&x(&f, 2, 2))
            - &TensorElement::dx(&f, 2, &[2]).mul_poly(&x(&f, 2, 1));
        assert_eq!(b, expected);
        assert_eq!(mui_bracket(&f, 0, &[0, 1], 2).unwrap(), TensorElement::from_poly(d));
        assert!(mui_det(&f, 2, &[1, 0]).is_err());
    }

    #[test]
    fn theorem_bases() {
        let f = f3();
        let degs = |case| -> Vec<u32> { theorem_basis(&f, case, 2).iter().map(|b| b.coh_degree().unwrap()).collect() };
        assert_eq!(degs(TheoremCase::Sl), vec![0, 2, 3, 7]);
        assert_eq!(degs(TheoremCase::Gl), vec![0, 10, 11, 15]);
    }
}
