#![allow(dead_code)]

use modinv::algebra::{ExtIndex, Monomial, Polynomial, TensorElement};
use modinv::field::{Elem, Field};
use modinv::groups::GroupMatrix;
use modinv::matrix::Matrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(p: i64) -> Field {
    Field::prime(p).unwrap()
}

pub fn random_elem(rng: &mut impl Rng, field: &Field) -> Elem {
    let all = field.elements();
    all[rng.gen_range(0..all.len())]
}

pub fn random_nonzero(rng: &mut impl Rng, field: &Field) -> Elem {
    loop {
        let c = random_elem(rng, field);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_poly(rng: &mut impl Rng, field: &Field, n: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    let k = rng.gen_range(0..=max_terms);
    let terms: Vec<(Monomial, Elem)> = (0..k)
        .map(|_| {
            let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            (Monomial::from_exponents(&exps), random_nonzero(rng, field))
        })
        .collect();
    Polynomial::from_terms(field, n, terms)
}

pub fn random_ext(rng: &mut impl Rng, n: usize, r: usize) -> ExtIndex {
    let all = ExtIndex::subsets(n, r);
    all[rng.gen_range(0..all.len())]
}

/// Random element of pure exterior degree `r`, or mixed degrees when `r` is `None`.
pub fn random_tensor(rng: &mut impl Rng, field: &Field, n: usize, r: Option<usize>, max_exp: u32) -> TensorElement {
    let parts = rng.gen_range(1..=3);
    let mut u = TensorElement::zero(field, n);
    for _ in 0..parts {
        let rr = r.unwrap_or_else(|| rng.gen_range(0..=n));
        let j = random_ext(rng, n, rr);
        u.add_part(j, &random_poly(rng, field, n, 3, max_exp));
    }
    u
}

pub fn random_invertible(rng: &mut impl Rng, field: &Field, n: usize) -> GroupMatrix {
    loop {
        let data: Vec<Elem> = (0..n * n).map(|_| random_elem(rng, field)).collect();
        if let Ok(g) = GroupMatrix::new(Matrix::from_elems(field, n, n, data)) {
            return g;
        }
    }
}

/// `diag(1, g_1)` with `g_1` random in `GL_{n-1}`.
pub fn random_block(rng: &mut impl Rng, field: &Field, n: usize) -> GroupMatrix {
    random_invertible(rng, field, n - 1).embed_block(n, 1)
}

/// `(-1)^k` in the field.
pub fn sign(field: &Field, k: usize) -> Elem {
    if k.is_multiple_of(2) {
        field.one()
    } else {
        field.neg(field.one())
    }
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(k - 1) {
        // insert k - 1 at every position; moving it left past t entries adds t inversions
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, k - 1);
            out.push((p, odd ^ ((perm.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// Leibniz determinant of a `k × k` matrix of polynomials.
pub fn leibniz_det(field: &Field, n: usize, k: usize, entry: impl Fn(usize, usize) -> Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(field, n);
    for (perm, odd) in permutations(k) {
        let mut term = Polynomial::one(field, n);
        for (row, &col) in perm.iter().enumerate() {
            term = &term * &entry(row, col);
        }
        acc = &acc + &term.scale(sign(field, odd as usize));
    }
    acc
}

/// `det(x_{v_j}^{q^{i_l}})` by the Leibniz formula.
pub fn moore_det(field: &Field, n: usize, i_list: &[u32], vars: &[usize]) -> Polynomial {
    let q = field.q();
    leibniz_det(field, n, i_list.len(), |row, col| {
        Polynomial::monomial(field, n, Monomial::var_pow(vars[col] - 1, q.pow(i_list[row])), field.one())
    })
}

/// `∏_{i=1}^{n} ∏_{c ∈ F_q^{i-1}} (x_i + c_1 x_1 + ... + c_{i-1} x_{i-1})`.
pub fn moore_product(field: &Field, n: usize) -> Polynomial {
    let elems = field.elements();
    let mut acc = Polynomial::one(field, n);
    for i in 1..=n {
        let mut coeffs = vec![0usize; i - 1];
        loop {
            let mut lin = Polynomial::var(field, n, i);
            for (j, &c) in coeffs.iter().enumerate() {
                lin = &lin + &Polynomial::var(field, n, j + 1).scale(elems[c]);
            }
            acc = &acc * &lin;
            let mut pos = 0;
            while pos < coeffs.len() && coeffs[pos] + 1 == elems.len() {
                coeffs[pos] = 0;
                pos += 1;
            }
            if pos == coeffs.len() {
                break;
            }
            coeffs[pos] += 1;
        }
    }
    acc
}

/// Number of pairs `(i, j)` with `i ∈ I`, `j ∈ J`, `i > j`; `None` when they overlap.
pub fn merge_parity(i: &[u32], j: &[u32]) -> Option<bool> {
    if i.iter().any(|x| j.contains(x)) {
        return None;
    }
    let count = i.iter().map(|a| j.iter().filter(|b| a > b).count()).sum::<usize>();
    Some(count % 2 == 1)
}

/// `|SL_n(F_q)| = q^{n(n-1)/2} ∏_{i=2}^{n} (q^i - 1)`.
pub fn sl_order(n: u32, q: u128) -> u128 {
    q.pow(n * (n - 1) / 2) * (2..=n).map(|i| q.pow(i) - 1).product::<u128>()
}
