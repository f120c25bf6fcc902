//! Matrix groups over `F_q` acting on `P_n ⊗ E_n`, their generator sets and orders.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, TensorElement};
use crate::field::{Elem, Field, FieldSpec};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("case {label} needs {requirement}")]
    CaseFieldMismatch { label: CaseLabel, requirement: String },
    #[error("unknown case label {0:?}")]
    UnknownCase(String),
    #[error("group closure exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

impl From<AlgebraError> for GroupError {
    fn from(e: AlgebraError) -> GroupError {
        match e {
            AlgebraError::ArityMismatch { left, right } => GroupError::ArityMismatch { left, right },
            AlgebraError::SingularMatrix => GroupError::SingularMatrix,
            other => GroupError::InvalidPresentation(other.to_string()),
        }
    }
}

/// An invertible matrix with its inverse cached.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMatrix {
    matrix: Matrix,
    inverse: Matrix,
}

impl GroupMatrix {
    pub fn new(matrix: Matrix) -> Result<GroupMatrix, GroupError> {
        if !matrix.is_square() {
            return Err(GroupError::ArityMismatch { left: matrix.rows(), right: matrix.cols() });
        }
        let inverse = matrix.inverse().ok_or(GroupError::SingularMatrix)?;
        Ok(GroupMatrix { matrix, inverse })
    }

    pub fn identity(field: &Field, n: usize) -> GroupMatrix {
        let m = Matrix::identity(field, n);
        GroupMatrix { matrix: m.clone(), inverse: m }
    }

    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Result<GroupMatrix, GroupError> {
        GroupMatrix::new(Matrix::from_ints(field, rows))
    }

    /// The transvection `1 + c E_{ij}` (1-based, `i != j`).
    pub fn transvection(field: &Field, n: usize, i: usize, j: usize, c: Elem) -> GroupMatrix {
        assert!(i != j && i >= 1 && j >= 1 && i <= n && j <= n);
        let mut m = Matrix::identity(field, n);
        m.set(i - 1, j - 1, c);
        let mut inv = Matrix::identity(field, n);
        inv.set(i - 1, j - 1, field.neg(c));
        GroupMatrix { matrix: m, inverse: inv }
    }

    pub fn diagonal(field: &Field, entries: &[Elem]) -> Result<GroupMatrix, GroupError> {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        GroupMatrix::new(m)
    }

    /// Places `block` at rows and columns `offset .. offset + k`, identity elsewhere.
    pub fn embed_block(&self, n: usize, offset: usize) -> GroupMatrix {
        let k = self.n();
        assert!(offset + k <= n);
        let f = self.field().clone();
        let place = |b: &Matrix| {
            let mut m = Matrix::identity(&f, n);
            for i in 0..k {
                for j in 0..k {
                    m.set(offset + i, offset + j, b.get(i, j));
                }
            }
            m
        };
        GroupMatrix { matrix: place(&self.matrix), inverse: place(&self.inverse) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn multiply(&self, other: &GroupMatrix) -> GroupMatrix {
        GroupMatrix { matrix: self.matrix.mul(&other.matrix), inverse: other.inverse.mul(&self.inverse) }
    }

    pub fn invert(&self) -> GroupMatrix {
        GroupMatrix { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    pub fn det(&self) -> Elem {
        self.matrix.det()
    }

    pub fn key(&self) -> Vec<u8> {
        self.matrix.key()
    }
}

impl fmt::Debug for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// `g · u`: substitutes `x_i -> Σ_j (g^{-1})_{ij} x_j` and likewise for `dx_i`.
pub fn act(g: &GroupMatrix, u: &TensorElement) -> Result<TensorElement, GroupError> {
    Ok(u.transform(&g.inverse)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Sl,
    Gl,
    G0,
    Parabolic,
    E8P53,
    F43,
    E64,
    E74,
    E85a,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 9] = [
        CaseLabel::Sl,
        CaseLabel::Gl,
        CaseLabel::G0,
        CaseLabel::Parabolic,
        CaseLabel::E8P53,
        CaseLabel::F43,
        CaseLabel::E64,
        CaseLabel::E74,
        CaseLabel::E85a,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Sl => "sl",
            CaseLabel::Gl => "gl",
            CaseLabel::G0 => "g0",
            CaseLabel::Parabolic => "parabolic",
            CaseLabel::E8P53 => "e8_p5_3",
            CaseLabel::F43 => "f4_3",
            CaseLabel::E64 => "e6_4",
            CaseLabel::E74 => "e7_4",
            CaseLabel::E85a => "e8_5a",
        }
    }

    /// `(n, p)` for the exceptional cases, whose size and field are fixed.
    pub fn fixed_shape(self) -> Option<(usize, u32)> {
        match self {
            CaseLabel::E8P53 => Some((3, 5)),
            CaseLabel::F43 => Some((3, 3)),
            CaseLabel::E64 | CaseLabel::E74 => Some((4, 3)),
            CaseLabel::E85a => Some((5, 3)),
            _ => None,
        }
    }

    pub fn is_weyl(self) -> bool {
        self.fixed_shape().is_some()
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<CaseLabel, GroupError> {
        CaseLabel::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| GroupError::UnknownCase(s.to_string()))
    }
}

/// A case label together with its size and field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub label: CaseLabel,
    pub n: usize,
    pub field: Field,
}

impl Case {
    pub fn new(label: CaseLabel, n: usize, field: &Field) -> Result<Case, GroupError> {
        let mismatch = |requirement: String| Err(GroupError::CaseFieldMismatch { label, requirement });
        match label.fixed_shape() {
            Some((m, p)) => {
                if n != m || field.p() != p || field.e() != 1 {
                    return mismatch(format!("n = {m} over F_{p}"));
                }
            }
            None => {
                if n < 2 {
                    return mismatch("n >= 2".into());
                }
                if label == CaseLabel::Parabolic && n < 3 {
                    return mismatch("n >= 3".into());
                }
            }
        }
        if n > crate::algebra::MAX_VARS {
            return mismatch(format!("n <= {}", crate::algebra::MAX_VARS));
        }
        Ok(Case { label, n, field: field.clone() })
    }

    /// An exceptional case over its own prime field.
    pub fn weyl(label: CaseLabel) -> Result<Case, GroupError> {
        let (n, p) = label
            .fixed_shape()
            .ok_or_else(|| GroupError::CaseFieldMismatch { label, requirement: "explicit n and field".into() })?;
        Case::new(label, n, &Field::prime(p as i64).expect("prime"))
    }

    pub fn sl(n: usize, field: &Field) -> Case {
        Case::new(CaseLabel::Sl, n, field).expect("valid sl case")
    }

    pub fn gl(n: usize, field: &Field) -> Case {
        Case::new(CaseLabel::Gl, n, field).expect("valid gl case")
    }

    pub fn g0(n: usize, field: &Field) -> Case {
        Case::new(CaseLabel::G0, n, field).expect("valid g0 case")
    }

    pub fn parabolic(n: usize, field: &Field) -> Case {
        Case::new(CaseLabel::Parabolic, n, field).expect("valid parabolic case")
    }

    /// Short human-readable name such as `sl(2,3)` or `e6_4`.
    pub fn name(&self) -> String {
        if self.label.is_weyl() {
            self.label.to_string()
        } else {
            format!("{}({},{})", self.label, self.n, self.field.q())
        }
    }

    /// Variable stem used when printing: `t` for the exceptional cases.
    pub fn var_name(&self) -> &'static str {
        if self.label.is_weyl() {
            "t"
        } else {
            "x"
        }
    }

    /// Checks the zero pattern of a matrix against the block shape of the case.
    pub fn in_block_shape(&self, g: &GroupMatrix) -> bool {
        let m = g.matrix();
        let n = self.n;
        let zero = |i: usize, j: usize| m.get(i, j).is_zero();
        let one = |i: usize, j: usize| m.get(i, j) == self.field.one();
        let first_column_clear = (1..n).all(|i| zero(i, 0));
        let det_one = g.det() == self.field.one();
        match self.label {
            CaseLabel::Sl | CaseLabel::F43 | CaseLabel::E8P53 => det_one,
            CaseLabel::Gl => true,
            CaseLabel::G0 => one(0, 0) && (1..n).all(|i| (0..n).all(|j| if i == j { one(i, j) } else { zero(i, j) })),
            CaseLabel::Parabolic | CaseLabel::E64 => one(0, 0) && first_column_clear && det_one,
            CaseLabel::E74 => first_column_clear && g.matrix().minor(&[1, 2, 3], &[1, 2, 3]) == self.field.one(),
            CaseLabel::E85a => {
                first_column_clear
                    && (1..4).all(|i| zero(i, 4))
                    && (1..4).all(|j| zero(4, j))
                    && m.minor(&[1, 2, 3], &[1, 2, 3]) == self.field.one()
            }
        }
    }
}

/// A named finite generating set.
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    pub case: Case,
    pub generators: Vec<GroupMatrix>,
    pub order_formula: u128,
}

impl GroupPresentation {
    pub fn label(&self) -> CaseLabel {
        self.case.label
    }

    pub fn n(&self) -> usize {
        self.case.n
    }

    pub fn field(&self) -> &Field {
        &self.case.field
    }

    pub fn to_json_value(&self) -> PresentationJson {
        PresentationJson {
            label: self.case.label.to_string(),
            field: self.case.field.spec(),
            n: self.case.n,
            generators: self.generators.iter().map(|g| g.matrix().to_coeff_rows()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    /// Rebuilds a presentation from JSON; the order formula is recomputed from the label.
    pub fn from_json(s: &str) -> Result<GroupPresentation, GroupError> {
        let v: PresentationJson =
            serde_json::from_str(s).map_err(|e| GroupError::InvalidPresentation(e.to_string()))?;
        let field = v.field.build().map_err(|e| GroupError::InvalidPresentation(e.to_string()))?;
        let label: CaseLabel = v.label.parse()?;
        let case = Case::new(label, v.n, &field)?;
        let mut generators = Vec::new();
        for rows in &v.generators {
            if rows.len() != v.n || rows.iter().any(|r| r.len() != v.n) {
                return Err(GroupError::InvalidPresentation("generator has the wrong shape".into()));
            }
            let mut data = Vec::with_capacity(v.n * v.n);
            for entry in rows.iter().flatten() {
                let c: Vec<i64> = entry.iter().map(|&x| x as i64).collect();
                if entry.len() != field.e() as usize || entry.iter().any(|&x| x >= field.p()) {
                    return Err(GroupError::InvalidPresentation(format!("bad entry {entry:?}")));
                }
                data.push(field.from_coeffs(&c).map_err(|e| GroupError::InvalidPresentation(e.to_string()))?);
            }
            generators.push(GroupMatrix::new(Matrix::from_elems(&field, v.n, v.n, data))?);
        }
        let order_formula = order_formula(&case);
        Ok(GroupPresentation { case, generators, order_formula })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub label: String,
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<Vec<Vec<Vec<u32>>>>,
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`.
pub fn gl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

pub fn sl_order(n: usize, q: u32) -> u128 {
    gl_order(n, q) / (q as u128 - 1)
}

pub fn order_formula(case: &Case) -> u128 {
    let q = case.field.q();
    let n = case.n;
    let sl3 = sl_order(3, 3);
    match case.label {
        CaseLabel::Sl => sl_order(n, q),
        CaseLabel::Gl => gl_order(n, q),
        CaseLabel::G0 => (q as u128).pow(n as u32 - 1),
        CaseLabel::Parabolic => (q as u128).pow(n as u32 - 1) * sl_order(n - 1, q),
        CaseLabel::E8P53 => sl_order(3, 5),
        CaseLabel::F43 => sl3,
        CaseLabel::E64 => 27 * sl3,
        CaseLabel::E74 => 2 * 27 * sl3,
        CaseLabel::E85a => 4 * 81 * sl3,
    }
}

fn standard_sl(field: &Field, n: usize) -> Vec<GroupMatrix> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for k in 0..field.e() {
                out.push(GroupMatrix::transvection(field, n, i, j, field.power_basis(k)));
            }
        }
    }
    out
}

/// Transvection plus 3-cycle: a two-element generating set of `SL_3(F_3)`.
fn minimal_sl3_pair(field: &Field) -> Vec<GroupMatrix> {
    let t = GroupMatrix::transvection(field, 3, 1, 2, field.one());
    let cycle = GroupMatrix::from_ints(field, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).expect("permutation");
    vec![t, cycle]
}

/// First-row unipotents `1 + c E_{1j}` for `j` in `cols`, `c` over the power basis.
fn first_row_unipotents(field: &Field, n: usize, cols: std::ops::RangeInclusive<usize>) -> Vec<GroupMatrix> {
    let mut out = Vec::new();
    for j in cols {
        for k in 0..field.e() {
            out.push(GroupMatrix::transvection(field, n, 1, j, field.power_basis(k)));
        }
    }
    out
}

/// Generators of `SL_n` (all elementary transvections over the power basis) or
/// `GL_n` (those plus `diag(ω, 1, ..., 1)` for a primitive element `ω`).
pub fn gens_standard(label: CaseLabel, n: usize, field: &Field) -> Result<GroupPresentation, GroupError> {
    let case = Case::new(label, n, field)?;
    let mut generators = standard_sl(field, n);
    match label {
        CaseLabel::Sl => {}
        CaseLabel::Gl => {
            let mut diag = vec![field.one(); n];
            diag[0] = field.primitive_element();
            generators.push(GroupMatrix::diagonal(field, &diag)?);
        }
        other => {
            return Err(GroupError::CaseFieldMismatch { label: other, requirement: "label sl or gl".into() });
        }
    }
    let order_formula = order_formula(&case);
    Ok(GroupPresentation { case, generators, order_formula })
}

/// Generators for every supported case.
pub fn gens_case(case: &Case) -> Result<GroupPresentation, GroupError> {
    let f = &case.field;
    let n = case.n;
    let generators = match case.label {
        CaseLabel::Sl | CaseLabel::Gl => return gens_standard(case.label, n, f),
        CaseLabel::F43 | CaseLabel::E8P53 => standard_sl(f, 3),
        CaseLabel::G0 => first_row_unipotents(f, n, 2..=n),
        CaseLabel::Parabolic => {
            let mut g: Vec<GroupMatrix> = standard_sl(f, n - 1).iter().map(|b| b.embed_block(n, 1)).collect();
            g.extend(first_row_unipotents(f, n, 2..=n));
            g
        }
        CaseLabel::E64 | CaseLabel::E74 => {
            let mut g: Vec<GroupMatrix> = minimal_sl3_pair(f).iter().map(|b| b.embed_block(4, 1)).collect();
            g.extend(first_row_unipotents(f, 4, 2..=4));
            if case.label == CaseLabel::E74 {
                g.push(GroupMatrix::diagonal(f, &[f.from_int(2), f.one(), f.one(), f.one()])?);
            }
            g
        }
        CaseLabel::E85a => {
            let one = f.one();
            let two = f.from_int(2);
            let mut g: Vec<GroupMatrix> = minimal_sl3_pair(f).iter().map(|b| b.embed_block(5, 1)).collect();
            g.extend(first_row_unipotents(f, 5, 2..=5));
            g.push(GroupMatrix::diagonal(f, &[two, one, one, one, one])?);
            g.push(GroupMatrix::diagonal(f, &[one, one, one, one, two])?);
            g
        }
    };
    Ok(GroupPresentation { case: case.clone(), generators, order_formula: order_formula(case) })
}

/// True iff every generator fixes `u`.
pub fn is_invariant(u: &TensorElement, pres: &GroupPresentation) -> Result<bool, GroupError> {
    if u.n() != pres.n() {
        return Err(GroupError::ArityMismatch { left: u.n(), right: pres.n() });
    }
    for g in &pres.generators {
        if &act(g, u)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Size of the group generated by the presentation, by breadth-first closure.
pub fn group_order_bfs(pres: &GroupPresentation, cap: usize) -> Result<usize, GroupError> {
    let id = GroupMatrix::identity(pres.field(), pres.n()).matrix().clone();
    let mut seen: FxHashSet<Vec<u8>> = FxHashSet::default();
    seen.insert(id.key());
    let mut queue = VecDeque::from([id]);
    let gens: Vec<&Matrix> = pres.generators.iter().map(|g| g.matrix()).collect();
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = m.mul(g);
            if seen.insert(next.key()) {
                if seen.len() > cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use crate::dickson;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn matrix_ops() {
        let f = f3();
        let g = GroupMatrix::from_ints(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(g.invert().matrix(), &Matrix::from_ints(&f, &[vec![1, 2], vec![0, 1]]));
        assert_eq!(g.multiply(&g.invert()), GroupMatrix::identity(&f, 2));
        assert_eq!(GroupMatrix::from_ints(&f, &[vec![1, 1], vec![1, 1]]).unwrap_err(), GroupError::SingularMatrix);
    }

    #[test]
    fn small_orders() {
        let f = f3();
        let sl2 = gens_standard(CaseLabel::Sl, 2, &f).unwrap();
        assert_eq!(sl2.generators.len(), 2);
        assert_eq!(group_order_bfs(&sl2, 1000).unwrap(), 24);
        assert_eq!(group_order_bfs(&gens_standard(CaseLabel::Gl, 2, &f).unwrap(), 1000).unwrap(), 48);
        let g0 = gens_case(&Case::g0(3, &f)).unwrap();
        assert_eq!(group_order_bfs(&g0, 100).unwrap(), 9);
        assert_eq!(group_order_bfs(&sl2, 10).unwrap_err(), GroupError::CapExceeded(10));
    }

    #[test]
    fn action_and_invariance() {
        let f = f3();
        let gl2 = gens_standard(CaseLabel::Gl, 2, &f).unwrap();
        let top = TensorElement::top(&f, 2);
        let diag = gl2.generators.last().unwrap();
        assert_eq!(act(diag, &top).unwrap(), top.scale(f.from_int(2)));
        let e2 = TensorElement::from_poly(dickson::dickson_e(&f, 2));
        assert!(!is_invariant(&e2, &gl2).unwrap());
        assert!(is_invariant(&e2, &gens_standard(CaseLabel::Sl, 2, &f).unwrap()).unwrap());
        let g0 = gens_case(&Case::g0(3, &f)).unwrap();
        assert!(!is_invariant(&TensorElement::from_poly(Polynomial::var(&f, 3, 1)), &g0).unwrap());
        let o = dickson::o_poly(&f, 3, 1, dickson::OMethod::DicksonSum).unwrap();
        assert!(is_invariant(&TensorElement::from_poly(o), &g0).unwrap());
    }

    #[test]
    fn labels_and_shapes() {
        assert_eq!("e8_5a".parse::<CaseLabel>().unwrap(), CaseLabel::E85a);
        assert!("e8_5b".parse::<CaseLabel>().is_err());
        assert!(Case::new(CaseLabel::E64, 4, &Field::prime(5).unwrap()).is_err());
        for label in [CaseLabel::F43, CaseLabel::E8P53, CaseLabel::E64, CaseLabel::E74, CaseLabel::E85a] {
            let case = Case::weyl(label).unwrap();
            let pres = gens_case(&case).unwrap();
            assert!(pres.generators.iter().all(|g| case.in_block_shape(g)), "{label}");
        }
    }

    #[test]
    fn presentation_json() {
        let pres = gens_standard(CaseLabel::Sl, 2, &f3()).unwrap();
        let s = pres.to_json();
        assert_eq!(
            s,
            r#"{"label":"sl","field":{"p":3,"e":1,"modulus":null},"n":2,"generators":[[[[1],[1]],[[0],[1]]],[[[1],[0]],[[1],[1]]]]}"#
        );
        let back = GroupPresentation::from_json(&s).unwrap();
        assert_eq!(back.generators, pres.generators);
        assert_eq!(back.order_formula, 24);
    }
}
