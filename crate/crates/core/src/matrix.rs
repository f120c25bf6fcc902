//! Small dense matrices over `F_q`.

use std::fmt;

use crate::field::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer entries, reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_int(x));
            }
        }
        m
    }

    pub fn from_elems(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let data = self.data.iter().map(|&x| self.field.mul(c, x)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Elem::ZERO;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                }
            }
        }
        det
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Elem {
        let k = rows.len();
        assert_eq!(k, cols.len());
        let mut data = Vec::with_capacity(k * k);
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Matrix { field: self.field.clone(), rows: k, cols: k, data }.det()
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Matrix::identity(f, n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]).unwrap();
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Some(Matrix { field: f.clone(), rows: n, cols: n, data: inv })
    }

    /// For a monomial matrix (one nonzero per row and column) returns, per row,
    /// the column and value of its nonzero entry.
    pub fn monomial_pattern(&self) -> Option<Vec<(usize, Elem)>> {
        if !self.is_square() {
            return None;
        }
        let mut used = vec![false; self.cols];
        let mut pattern = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut nz = self.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero());
            let (j, &v) = nz.next()?;
            if nz.next().is_some() || used[j] {
                return None;
            }
            used[j] = true;
            pattern.push((j, v));
        }
        Some(pattern)
    }

    /// Entry encodings, row-major; used as a hash key.
    pub fn key(&self) -> Vec<u8> {
        self.data.iter().map(|e| e.index() as u8).collect()
    }

    /// Rows of coefficient lists, the serialized form of a matrix.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&e| self.field.coeffs(e)).collect()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let entries: Vec<String> = self.row(i).iter().map(|&e| self.field.format_elem(e)).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
