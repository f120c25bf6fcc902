//! Invariant subspaces of `P_n ⊗ E_n`, degree by degree, by exact linear algebra.
//!
//! The group order is divisible by `p` in every case of interest, so there is
//! no averaging operator. Invariants are computed as the common kernel of
//! `ρ(g) - 1` over a generating set, one `(polynomial degree, exterior degree)`
//! block at a time; the action preserves both gradings.

mod cases;
mod hilbert;
mod linalg;
mod verify;

pub use cases::{case_elements, module_description, CaseElements, NamedElement};
pub use hilbert::{hilbert_coeff, hilbert_series, FreeModuleDescription};
pub use verify::{
    default_max_degree, verify_module, wilkerson_check, CheckRow, DegreeRow, VerificationReport, WilkersonReport,
    WitnessReport,
};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::algebra::{monomials_of_degree, ExtIndex, LinearSubstitution, Monomial, Polynomial, TensorElement};
use crate::dickson::DicksonError;
use crate::field::{Elem, Field};
use crate::groups::{GroupError, GroupPresentation};
use crate::matrix::Matrix;
use linalg::{axpy, Echelon};

/// Largest degree component the solver accepts.
pub const FEASIBILITY_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedPointError {
    #[error("degree {degree} has {size} basis elements, above the cap of {cap}")]
    FeasibilityCapExceeded { degree: u32, size: usize, cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Dickson(#[from] DicksonError),
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomial basis elements of cohomological degree `d`.
pub fn basis_size(n: usize, d: u32) -> usize {
    let n = n as u64;
    (0..=n.min(d as u64))
        .filter(|r| (d as u64 - r).is_multiple_of(2))
        .map(|r| {
            let k = (d as u64 - r) / 2;
            let monos = if n == 0 { u64::from(k == 0) } else { binomial(n + k - 1, k) };
            monos * binomial(n, r)
        })
        .sum::<u64>() as usize
}

/// Basis `(x^m, dx_J)` of the degree-`d` component, `2 deg m + |J| = d`, ordered by
/// `|J|`, then `J` lexicographically, then `m` in descending graded-lex order.
pub fn monomial_basis(n: usize, d: u32) -> Vec<(Monomial, ExtIndex)> {
    let mut out = Vec::new();
    for r in 0..=n.min(d as usize) {
        if !(d as usize - r).is_multiple_of(2) {
            continue;
        }
        let monos = monomials_of_degree(n, (d - r as u32) / 2);
        for j in ExtIndex::subsets(n, r) {
            out.extend(monos.iter().map(|&m| (m, j)));
        }
    }
    out
}

/// One `(polynomial degree k, exterior degree r)` block of the monomial basis.
struct Block {
    n: usize,
    monos: Vec<Monomial>,
    exts: Vec<ExtIndex>,
    mono_index: FxHashMap<Monomial, usize>,
}

impl Block {
    fn new(n: usize, k: u32, r: usize) -> Block {
        let monos = monomials_of_degree(n, k);
        let exts = ExtIndex::subsets(n, r);
        let mono_index = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Block { n, monos, exts, mono_index }
    }

    fn len(&self) -> usize {
        self.monos.len() * self.exts.len()
    }

    fn element(&self, i: usize) -> (Monomial, ExtIndex) {
        let nm = self.monos.len();
        (self.monos[i % nm], self.exts[i / nm])
    }

    fn to_tensor(&self, field: &Field, v: &[Elem]) -> TensorElement {
        let mut parts: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); self.exts.len()];
        for (i, &c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (m, _) = self.element(i);
                parts[i / self.monos.len()].push((m, c));
            }
        }
        let parts = self.exts.iter().zip(parts).map(|(&j, terms)| (j, Polynomial::from_terms(field, self.n, terms)));
        TensorElement::from_parts(field, self.n, parts)
    }

    /// Columns of `ρ(g)` where `h = g^{-1}`: the image of each basis element as sparse coordinates.
    fn images(&self, field: &Field, h: &Matrix) -> Vec<Vec<(usize, Elem)>> {
        let n = self.n;
        let nm = self.monos.len();
        let mut subst = LinearSubstitution::new(h);
        let minors: Vec<Vec<(usize, Elem)>> = self
            .exts
            .iter()
            .map(|j| {
                let rows: Vec<usize> = j.indices().iter().map(|i| i - 1).collect();
                self.exts
                    .iter()
                    .enumerate()
                    .filter_map(|(t, k)| {
                        let cols: Vec<usize> = k.indices().iter().map(|i| i - 1).collect();
                        let m = h.minor(&rows, &cols);
                        (!m.is_zero()).then_some((t, m))
                    })
                    .collect()
            })
            .collect();
        let mono_images: Vec<Polynomial> =
            self.monos.iter().map(|&m| subst.apply(&Polynomial::monomial(field, n, m, field.one()))).collect();
        let mut out = Vec::with_capacity(self.len());
        for ext_minors in &minors {
            for image in &mono_images {
                let mut col = Vec::with_capacity(image.len() * ext_minors.len());
                for &(t, minor) in ext_minors {
                    for &(m, c) in image.terms() {
                        col.push((t * nm + self.mono_index[&m], field.mul(c, minor)));
                    }
                }
                out.push(col);
            }
        }
        out
    }
}

/// Kernel vectors of the block, stored row-major: `rows[l]` holds the coordinate
/// of basis element `l` in each kernel vector.
struct Kernel {
    rows: Vec<Vec<Elem>>,
    dim: usize,
}

fn identity_rows(field: &Field, size: usize) -> Vec<Vec<Elem>> {
    (0..size)
        .map(|l| {
            let mut r = vec![Elem::ZERO; size];
            r[l] = field.one();
            r
        })
        .collect()
}

fn monomial_fixed_space(field: &Field, images: &[Vec<(usize, Elem)>]) -> Kernel {
    let size = images.len();
    let mut seen = vec![false; size];
    let mut vectors: Vec<Vec<(usize, Elem)>> = Vec::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![(start, field.one())];
        seen[start] = true;
        let mut cur = start;
        let mut val = field.one();
        let closes = loop {
            let (next, s) = images[cur][0];
            val = field.mul(val, s);
            if next == start {
                break val == field.one();
            }
            seen[next] = true;
            cycle.push((next, val));
            cur = next;
        };
        if closes {
            vectors.push(cycle);
        }
    }
    let dim = vectors.len();
    let mut rows = vec![vec![Elem::ZERO; dim]; size];
    for (t, v) in vectors.iter().enumerate() {
        for &(l, c) in v {
            rows[l][t] = c;
        }
    }
    Kernel { rows, dim }
}

fn restrict_kernel(field: &Field, images: &[Vec<(usize, Elem)>], kernel: Option<Kernel>) -> Kernel {
    let size = images.len();
    let kernel = kernel.unwrap_or_else(|| Kernel { rows: identity_rows(field, size), dim: size });
    if kernel.dim == 0 {
        return kernel;
    }
    // transpose the image columns into rows of ρ(g)
    let mut by_row: Vec<Vec<(usize, Elem)>> = vec![Vec::new(); size];
    for (l, col) in images.iter().enumerate() {
        for &(i, c) in col {
            by_row[i].push((l, c));
        }
    }
    let minus_one = field.neg(field.one());
    let mut ech = Echelon::new(field, kernel.dim);
    for (i, row) in by_row.iter().enumerate() {
        let mut m = vec![Elem::ZERO; kernel.dim];
        for &(l, c) in row {
            axpy(field, &mut m, &kernel.rows[l], c);
        }
        axpy(field, &mut m, &kernel.rows[i], minus_one);
        ech.insert(m);
        if ech.is_full() {
            return Kernel { rows: vec![Vec::new(); size], dim: 0 };
        }
    }
    let null = ech.null_space();
    let dim = null.len();
    let rows = kernel
        .rows
        .iter()
        .map(|krow| {
            null.iter()
                .map(|c| {
                    let mut acc = Elem::ZERO;
                    for (a, b) in krow.iter().zip(c) {
                        if !a.is_zero() && !b.is_zero() {
                            acc = field.add(acc, field.mul(*a, *b));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Kernel { rows, dim }
}

fn is_monomial_action(images: &[Vec<(usize, Elem)>]) -> bool {
    images.iter().all(|col| col.len() == 1)
}

/// Invariant vectors of one block in reduced row-echelon form.
fn block_fixed_space(pres: &GroupPresentation, block: &Block) -> Vec<Vec<Elem>> {
    let field = pres.field();
    let size = block.len();
    if size == 0 {
        return Vec::new();
    }
    if pres.generators.is_empty() {
        return identity_rows(field, size);
    }
    let mut all_images: Vec<Vec<Vec<(usize, Elem)>>> =
        pres.generators.iter().map(|g| block.images(field, g.inverse_matrix())).collect();
    // monomial generators first: their fixed space is read off from orbits
    all_images.sort_by_key(|imgs| !is_monomial_action(imgs));
    let mut kernel: Option<Kernel> = None;
    for images in &all_images {
        let next = match kernel {
            None if is_monomial_action(images) => monomial_fixed_space(field, images),
            k => restrict_kernel(field, images, k),
        };
        let done = next.dim == 0;
        kernel = Some(next);
        if done {
            return Vec::new();
        }
    }
    let kernel = kernel.expect("at least one generator");
    let mut ech = Echelon::new(field, size);
    for t in 0..kernel.dim {
        ech.insert(kernel.rows.iter().map(|r| r[t]).collect());
    }
    ech.into_sorted_rows()
}

fn blocks_of_degree(n: usize, d: u32) -> impl Iterator<Item = (u32, usize)> {
    (0..=n.min(d as usize)).filter(move |r| (d as usize - r).is_multiple_of(2)).map(move |r| ((d - r as u32) / 2, r))
}

fn check_cap(n: usize, d: u32) -> Result<(), FixedPointError> {
    let size = basis_size(n, d);
    if size > FEASIBILITY_CAP {
        return Err(FixedPointError::FeasibilityCapExceeded { degree: d, size, cap: FEASIBILITY_CAP });
    }
    Ok(())
}

/// Dimension of the invariants of exterior degree `r` inside cohomological degree `d`, for each `r`.
pub fn fixed_dim_by_exterior(pres: &GroupPresentation, d: u32) -> Result<Vec<(usize, usize)>, FixedPointError> {
    let n = pres.n();
    check_cap(n, d)?;
    Ok(blocks_of_degree(n, d).map(|(k, r)| (r, block_fixed_space(pres, &Block::new(n, k, r)).len())).collect())
}

/// Dimension of the invariants in cohomological degree `d`.
pub fn fixed_dim(pres: &GroupPresentation, d: u32) -> Result<usize, FixedPointError> {
    Ok(fixed_dim_by_exterior(pres, d)?.iter().map(|(_, dim)| dim).sum())
}

/// A basis of the invariants in degree `d`, in reduced echelon form with
/// pivots in [`monomial_basis`] order.
pub fn fixed_basis(pres: &GroupPresentation, d: u32) -> Result<Vec<TensorElement>, FixedPointError> {
    let n = pres.n();
    check_cap(n, d)?;
    let mut out = Vec::new();
    for (k, r) in blocks_of_degree(n, d) {
        let block = Block::new(n, k, r);
        out.extend(block_fixed_space(pres, &block).iter().map(|v| block.to_tensor(pres.field(), v)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{gens_standard, CaseLabel};

    fn sl2() -> GroupPresentation {
        gens_standard(CaseLabel::Sl, 2, &Field::prime(3).unwrap()).unwrap()
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(monomial_basis(2, 0).len(), 1);
        let b2 = monomial_basis(2, 2);
        assert_eq!(b2.len(), 3);
        assert_eq!(b2[2].1, ExtIndex::full(2));
        assert_eq!(monomial_basis(2, 3).len(), 4);
        for d in 0..12 {
            assert_eq!(basis_size(3, d), monomial_basis(3, d).len());
        }
    }

    #[test]
    fn small_fixed_dims() {
        let g = sl2();
        assert_eq!(fixed_dim(&g, 0).unwrap(), 1);
        assert_eq!(fixed_dim(&g, 1).unwrap(), 0);
        assert_eq!(fixed_dim(&g, 2).unwrap(), 1);
        let basis = fixed_basis(&g, 2).unwrap();
        assert_eq!(basis, vec![TensorElement::top(g.field(), 2)]);
    }

    #[test]
    fn fixed_basis_is_invariant() {
        let g = sl2();
        for d in [7, 8, 10, 12] {
            for v in fixed_basis(&g, d).unwrap() {
                assert!(crate::groups::is_invariant(&v, &g).unwrap());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = gens_standard(CaseLabel::Sl, 8, &Field::prime(3).unwrap()).unwrap();
        assert!(matches!(fixed_dim(&g, 40), Err(FixedPointError::FeasibilityCapExceeded { .. })));
    }
}
