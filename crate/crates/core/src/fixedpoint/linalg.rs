//! Dense Gauss-Jordan elimination over `F_q` on rows of field elements.

use crate::field::{Elem, Field};

/// `dst += c * src`, entrywise.
pub(crate) fn axpy(field: &Field, dst: &mut [Elem], src: &[Elem], c: Elem) {
    if c.is_zero() {
        return;
    }
    let q = field.q() as usize;
    let row = field.mul_row(c);
    let add = field.add_table();
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = Elem(add[d.index() * q + row[s.index()] as usize]);
        }
    }
}

fn scale_in_place(field: &Field, v: &mut [Elem], c: Elem) {
    let row = field.mul_row(c);
    for x in v.iter_mut() {
        *x = Elem(row[x.index()]);
    }
}

/// Incremental reduced row-echelon form: rows are inserted one at a time and
/// kept fully reduced against each other.
pub(crate) struct Echelon {
    field: Field,
    width: usize,
    /// `(pivot column, row)`, every row normalized to 1 at its pivot and zero
    /// at every other pivot column.
    rows: Vec<(usize, Vec<Elem>)>,
    is_pivot: Vec<bool>,
}

impl Echelon {
    pub(crate) fn new(field: &Field, width: usize) -> Echelon {
        Echelon { field: field.clone(), width, rows: Vec::new(), is_pivot: vec![false; width] }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` and adds it when independent; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        let f = &self.field;
        for (col, row) in &self.rows {
            let c = v[*col];
            if !c.is_zero() {
                axpy(f, &mut v, row, f.neg(c));
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        scale_in_place(f, &mut v, inv);
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if !c.is_zero() {
                axpy(f, row, &v, f.neg(c));
            }
        }
        self.is_pivot[pivot] = true;
        self.rows.push((pivot, v));
        true
    }

    /// Basis of `{c : row · c = 0 for every inserted row}`, one vector per free column.
    pub(crate) fn null_space(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        (0..self.width)
            .filter(|&c| !self.is_pivot[c])
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.width];
                v[free] = f.one();
                for (col, row) in &self.rows {
                    v[*col] = f.neg(row[free]);
                }
                v
            })
            .collect()
    }

    /// The reduced rows sorted by pivot column.
    pub(crate) fn into_sorted_rows(mut self) -> Vec<Vec<Elem>> {
        self.rows.sort_by_key(|(c, _)| *c);
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_small_system() {
        let f = Field::prime(3).unwrap();
        let e = |x: i64| f.from_int(x);
        let mut ech = Echelon::new(&f, 3);
        assert!(ech.insert(vec![e(1), e(1), e(0)]));
        assert!(!ech.insert(vec![e(2), e(2), e(0)]));
        assert_eq!(ech.rank(), 1);
        let ns = ech.null_space();
        assert_eq!(ns, vec![vec![e(2), e(1), e(0)], vec![e(0), e(0), e(1)]]);
        assert!(ech.insert(vec![e(0), e(1), e(1)]));
        assert!(ech.insert(vec![e(0), e(0), e(1)]));
        assert!(ech.is_full());
        assert!(ech.null_space().is_empty());
    }
}
