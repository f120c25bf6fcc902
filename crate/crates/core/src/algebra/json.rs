use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::tensor::{ExtIndex, TensorElement};
use super::AlgebraError;
use crate::field::FieldSpec;

/// One term `c · x^exp · dx_ext` of the canonical JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: Vec<u32>,
    pub exp: Vec<u32>,
    pub ext: Vec<usize>,
}

/// Canonical JSON form of a [`TensorElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub field: FieldSpec,
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl TensorElement {
    /// Terms sorted by exterior index, then by monomial in descending graded-lex order.
    pub fn to_json_value(&self) -> TensorJson {
        let f = self.field();
        let mut terms = Vec::with_capacity(self.num_terms());
        for (j, p) in self.parts() {
            let ext = j.indices();
            for &(m, c) in p.terms() {
                terms.push(TermJson { c: f.coeffs(c), exp: m.exponents(self.n()), ext: ext.clone() });
            }
        }
        TensorJson { field: f.spec(), n: self.n(), terms }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(v: &TensorJson) -> Result<TensorElement, AlgebraError> {
        let field = v.field.build().map_err(|e| AlgebraError::Json(e.to_string()))?;
        let n = v.n;
        if n > super::MAX_VARS {
            return Err(AlgebraError::TooManyVariables(n));
        }
        let mut grouped: std::collections::BTreeMap<ExtIndex, Vec<_>> = Default::default();
        for t in &v.terms {
            if t.exp.len() != n {
                return Err(AlgebraError::InvalidTerm(format!(
                    "exponent vector of length {} for n = {n}",
                    t.exp.len()
                )));
            }
            if t.ext.windows(2).any(|w| w[0] >= w[1]) || t.ext.iter().any(|&j| j == 0 || j > n) {
                return Err(AlgebraError::InvalidTerm(format!("exterior index {:?}", t.ext)));
            }
            if t.exp.iter().any(|&a| a > u16::MAX as u32) || t.exp.iter().sum::<u32>() > u16::MAX as u32 {
                return Err(AlgebraError::InvalidTerm("exponent too large".into()));
            }
            if t.c.len() != field.e() as usize {
                return Err(AlgebraError::InvalidTerm(format!("coefficient {:?} has wrong length", t.c)));
            }
            let c: Vec<i64> = t.c.iter().map(|&x| x as i64).collect();
            if t.c.iter().any(|&x| x >= field.p()) {
                return Err(AlgebraError::InvalidTerm(format!("coefficient {:?} not reduced", t.c)));
            }
            let c = field.from_coeffs(&c).map_err(|e| AlgebraError::InvalidTerm(e.to_string()))?;
            grouped.entry(ExtIndex::from_indices(&t.ext)).or_default().push((Monomial::from_exponents(&t.exp), c));
        }
        let parts = grouped.into_iter().map(|(j, terms)| (j, Polynomial::from_terms(&field, n, terms)));
        Ok(TensorElement::from_parts(&field, n, parts))
    }

    pub fn from_json(s: &str) -> Result<TensorElement, AlgebraError> {
        let v: TensorJson = serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
        TensorElement::from_json_value(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn canonical_form() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let x1 = Polynomial::var(&f, 2, 1);
        let u = &TensorElement::dx(&f, 2, &[2]) + &TensorElement::from_poly(x1.scale(f.power_basis(1)));
        let s = u.to_json();
        assert_eq!(
            s,
            r#"{"field":{"p":3,"e":2,"modulus":[1,0,1]},"n":2,"terms":[{"c":[0,1],"exp":[1,0],"ext":[]},{"c":[1,0],"exp":[0,0],"ext":[2]}]}"#
        );
        assert_eq!(TensorElement::from_json(&s).unwrap(), u);
    }

    #[test]
    fn rejects_malformed() {
        let bad = r#"{"field":{"p":3,"e":1,"modulus":null},"n":2,"terms":[{"c":[1],"exp":[1],"ext":[]}]}"#;
        assert!(matches!(TensorElement::from_json(bad), Err(AlgebraError::InvalidTerm(_))));
        let bad_ext = r#"{"field":{"p":3,"e":1,"modulus":null},"n":2,"terms":[{"c":[1],"exp":[1,0],"ext":[2,1]}]}"#;
        assert!(TensorElement::from_json(bad_ext).is_err());
        assert!(TensorElement::from_json("{").is_err());
    }
}
