use serde::Serialize;

use crate::algebra::{ExtIndex, Polynomial, TensorElement};
use crate::dickson::{self, FMethod, UnivariateOverP, PRODUCT_LIMIT};
use crate::groups::{act, gens_case, is_invariant, Case, CaseLabel, GroupMatrix, GroupPresentation};
use crate::milnor::{milnor_composite, MilnorIndexSet};

use super::cases::{case_elements, module_description, CaseElements};
use super::hilbert::{hilbert_series, FreeModuleDescription};
use super::{fixed_dim_by_exterior, FixedPointError};

/// Largest degree verified when none is given.
pub fn default_max_degree(case: &Case) -> u32 {
    match (case.label, case.n) {
        (CaseLabel::Sl | CaseLabel::Gl, 2) => 40,
        (CaseLabel::Sl | CaseLabel::Gl, 3) | (CaseLabel::F43 | CaseLabel::E8P53, _) => 30,
        (CaseLabel::G0 | CaseLabel::Parabolic, 3) => 20,
        (CaseLabel::E64 | CaseLabel::E74, _) => 24,
        (CaseLabel::E85a, _) => 12,
        (_, n) if n <= 2 => 40,
        _ => 12,
    }
}

/// Computed and predicted dimension in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub d: u32,
    pub computed: u64,
    pub predicted: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// A named pass/fail check on one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub degree: Option<u32>,
    pub passed: bool,
}

/// Integrality witness `φ(X)`: monic, Dickson coefficients, vanishing at a variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub applicable: bool,
    pub witness: String,
    pub monic: bool,
    pub dickson_coefficients: bool,
    pub vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl WitnessReport {
    fn not_applicable(note: &str) -> WitnessReport {
        WitnessReport {
            applicable: false,
            witness: String::new(),
            monic: false,
            dickson_coefficients: false,
            vanishes: false,
            note: Some(note.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        !self.applicable || (self.monic && self.dickson_coefficients && self.vanishes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WilkersonReport {
    /// Polynomial degrees (cohomological degree / 2) of the algebra generators.
    pub degrees: Vec<u32>,
    pub degree_product: u128,
    pub order: u128,
    pub degrees_match: bool,
    pub witness: WitnessReport,
}

impl WilkersonReport {
    pub fn passed(&self) -> bool {
        self.degrees_match && self.witness.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub max_degree: u32,
    pub rows: Vec<DegreeRow>,
    /// Polynomial (exterior degree 0) part against the series of the algebra
    /// generators alone; only for the `g0` and `parabolic` cases.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polynomial_rows: Vec<DegreeRow>,
    pub invariance: Vec<CheckRow>,
    /// Constructed degrees against the degree bookkeeping.
    pub degrees: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eigen: Vec<CheckRow>,
    pub wilkerson: WilkersonReport,
    pub passed: bool,
}

impl VerificationReport {
    pub fn mismatches(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.rows.iter().filter(|r| !r.matches).map(|r| format!("dimension in degree {}", r.d)).collect();
        out.extend(
            self.polynomial_rows.iter().filter(|r| !r.matches).map(|r| format!("polynomial part in degree {}", r.d)),
        );
        for (kind, rows) in [("invariance", &self.invariance), ("degree", &self.degrees), ("eigenvalue", &self.eigen)] {
            out.extend(rows.iter().filter(|r| !r.passed).map(|r| format!("{kind}: {}", r.name)));
        }
        if !self.wilkerson.passed() {
            out.push("wilkerson".to_string());
        }
        out
    }
}

fn degree_checks(desc: &FreeModuleDescription, els: &CaseElements) -> Vec<CheckRow> {
    let pairs =
        els.algebra_generators.iter().zip(&desc.algebra_gen_degrees).chain(els.basis.iter().zip(&desc.basis_degrees));
    let mut out: Vec<CheckRow> = pairs
        .map(|(e, &d)| CheckRow { name: e.name.clone(), degree: Some(d), passed: e.element.coh_degree() == Some(d) })
        .collect();
    out.push(CheckRow {
        name: "element counts".into(),
        degree: None,
        passed: els.algebra_generators.len() == desc.algebra_gen_degrees.len()
            && els.basis.len() == desc.basis_degrees.len(),
    });
    out
}

fn invariance_checks(pres: &GroupPresentation, els: &CaseElements) -> Result<Vec<CheckRow>, FixedPointError> {
    els.algebra_generators
        .iter()
        .chain(&els.basis)
        .map(|e| {
            Ok(CheckRow {
                name: e.name.clone(),
                degree: e.element.coh_degree(),
                passed: is_invariant(&e.element, pres)?,
            })
        })
        .collect()
}

/// `α = diag(2, 1, 1, 1)` fixes the listed module basis and scales `Q_J u_4` by 2.
fn alpha_checks(case: &Case, els: &CaseElements) -> Result<Vec<CheckRow>, FixedPointError> {
    let f = &case.field;
    let two = f.from_int(2);
    let alpha = GroupMatrix::diagonal(f, &[two, f.one(), f.one(), f.one()])?;
    let mut out = Vec::new();
    for e in &els.basis {
        let fixed = act(&alpha, &e.element)? == e.element;
        out.push(CheckRow { name: format!("alpha fixes {}", e.name), degree: e.element.coh_degree(), passed: fixed });
    }
    let u4 = TensorElement::from_part(ExtIndex::full(4), Polynomial::one(f, 4));
    for index in MilnorIndexSet::all_subsets(3) {
        let v = milnor_composite(&index, &u4);
        let scaled = act(&alpha, &v)? == v.scale(two);
        let parts: Vec<String> = index.indices().iter().map(|i| i.to_string()).collect();
        out.push(CheckRow {
            name: format!("alpha Q{{{}}} u4 = 2 Q{{{}}} u4", parts.join(","), parts.join(",")),
            degree: v.coh_degree(),
            passed: scaled,
        });
    }
    Ok(out)
}

fn compare(d: u32, computed: u64, predicted: u64) -> DegreeRow {
    DegreeRow { d, computed, predicted, matches: computed == predicted }
}

/// Checks the claimed invariant ring of a case: degreewise dimensions up to
/// `d_max`, invariance of every constructed element, and the degree bookkeeping.
/// Agreement is evidence up to `d_max`, not a proof of freeness.
pub fn verify_module(case: &Case, d_max: u32) -> Result<VerificationReport, FixedPointError> {
    let pres = gens_case(case)?;
    let desc = module_description(case);
    let els = case_elements(case)?;
    let series = hilbert_series(&desc, d_max);
    let with_poly = matches!(case.label, CaseLabel::G0 | CaseLabel::Parabolic);
    let poly_desc =
        FreeModuleDescription { algebra_gen_degrees: desc.algebra_gen_degrees.clone(), basis_degrees: vec![0] };
    let poly_series = hilbert_series(&poly_desc, d_max);

    let mut rows = Vec::new();
    let mut polynomial_rows = Vec::new();
    for d in 0..=d_max {
        let by_ext = fixed_dim_by_exterior(&pres, d)?;
        let total: usize = by_ext.iter().map(|(_, dim)| dim).sum();
        rows.push(compare(d, total as u64, series[d as usize]));
        if with_poly && d % 2 == 0 {
            let r0 = by_ext.iter().find(|(r, _)| *r == 0).map_or(0, |(_, dim)| *dim);
            polynomial_rows.push(compare(d, r0 as u64, poly_series[d as usize]));
        }
    }
    let invariance = invariance_checks(&pres, &els)?;
    let degrees = degree_checks(&desc, &els);
    let eigen = if case.label == CaseLabel::E74 { alpha_checks(case, &els)? } else { Vec::new() };
    let wilkerson = wilkerson_check(case)?;

    let passed = rows.iter().chain(&polynomial_rows).all(|r| r.matches)
        && invariance.iter().chain(&degrees).chain(&eigen).all(|c| c.passed)
        && wilkerson.passed();
    Ok(VerificationReport {
        case: case.name(),
        max_degree: d_max,
        rows,
        polynomial_rows,
        invariance,
        degrees,
        eigen,
        wilkerson,
        passed,
    })
}

/// `f_n(X)`: monic of degree `q^n`, coefficient of `X^{q^i}` is `(-1)^{n-i} c_{n,i}`,
/// and `f_n(x_i) = 0`.
fn f_witness(case: &Case) -> Result<WitnessReport, FixedPointError> {
    let f = &case.field;
    let n = case.n;
    let q = f.q();
    let method = if (q as u64).pow(n as u32) <= PRODUCT_LIMIT { FMethod::Product } else { FMethod::Recursive };
    let w = dickson::f_poly(f, n, method)?;
    let expected: Vec<(u32, Polynomial)> =
        (0..=n).map(|i| (q.pow(i as u32), dickson::dickson_c(f, n, i).scale(f.sign(n - i)))).collect();
    Ok(WitnessReport {
        applicable: true,
        witness: format!("f_{n}(X)"),
        monic: w.is_monic() && w.x_degree() == q.pow(n as u32),
        dickson_coefficients: coefficients_match(&w, &expected),
        vanishes: (1..=n).all(|i| w.evaluate_at_var(i).is_zero()),
        note: None,
    })
}

/// `φ(X) = 𝒪_{n-1}(X) - 𝒪_{n-1}(x_1)` with `𝒪_{n-1}` formed as a product over
/// the span of `x_2, ..., x_n`.
fn phi_witness(case: &Case) -> Result<WitnessReport, FixedPointError> {
    let f = &case.field;
    let n = case.n;
    let q = f.q();
    let span: Vec<usize> = (2..=n).collect();
    let o_x = dickson::orbit_product(f, n + 1, n + 1, &span)?;
    let o_x1 = dickson::orbit_product(f, n + 1, 1, &span)?;
    let w = UnivariateOverP::new(&o_x - &o_x1);
    let map: Vec<usize> = (1..n).collect();
    let mut expected: Vec<(u32, Polynomial)> = (0..n)
        .map(|j| {
            let c = dickson::dickson_c(f, n - 1, j).embed(n, &map);
            (q.pow(j as u32), c.scale(f.sign(n - 1 - j)))
        })
        .collect();
    let o_x1_n = dickson::orbit_product(f, n, 1, &span)?;
    expected.push((0, -&o_x1_n));
    Ok(WitnessReport {
        applicable: true,
        witness: format!("O_{}(X) - O_{}(x1)", n - 1, n - 1),
        monic: w.is_monic() && w.x_degree() == q.pow(n as u32 - 1),
        dickson_coefficients: coefficients_match(&w, &expected),
        vanishes: w.evaluate_at_var(1).is_zero(),
        note: None,
    })
}

/// True iff the `X`-coefficients are exactly the listed ones (summed on repeated powers) and zero elsewhere.
fn coefficients_match(w: &UnivariateOverP, expected: &[(u32, Polynomial)]) -> bool {
    let mut want: std::collections::BTreeMap<u32, Polynomial> = std::collections::BTreeMap::new();
    for (k, c) in expected {
        let entry = want.entry(*k).or_insert_with(|| Polynomial::zero(c.field(), c.n()));
        *entry = &*entry + c;
    }
    want.retain(|_, c| !c.is_zero());
    let got = w.poly().coefficients_in(w.n() + 1);
    got.len() == want.len() && want.iter().all(|(&k, c)| &w.coefficient(k) == c)
}

/// Degree product against the group order, plus an integrality witness for the
/// cases whose invariant ring is polynomial.
pub fn wilkerson_check(case: &Case) -> Result<WilkersonReport, FixedPointError> {
    let desc = module_description(case);
    let degrees: Vec<u32> = desc.algebra_gen_degrees.iter().map(|d| d / 2).collect();
    let degree_product: u128 = degrees.iter().map(|&d| d as u128).product();
    let order = gens_case(case)?.order_formula;
    let witness = match case.label {
        CaseLabel::Sl | CaseLabel::Gl | CaseLabel::F43 | CaseLabel::E8P53 => f_witness(case)?,
        CaseLabel::G0 | CaseLabel::Parabolic | CaseLabel::E64 => phi_witness(case)?,
        CaseLabel::E74 | CaseLabel::E85a => {
            WitnessReport::not_applicable("invariant ring is not polynomial; only the degree product is checked")
        }
    };
    Ok(WilkersonReport { degrees, degree_product, order, degrees_match: degree_product == order, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn degree_products() {
        let cases = [
            (Case::sl(2, &f3()), 24),
            (Case::gl(2, &f3()), 48),
            (Case::sl(3, &f3()), 5616),
            (Case::g0(3, &f3()), 9),
            (Case::parabolic(3, &f3()), 216),
            (Case::weyl(CaseLabel::E64).unwrap(), 151632),
        ];
        for (case, order) in cases {
            let w = wilkerson_check(&case).unwrap();
            assert_eq!(w.degree_product, order, "{}", case.name());
            assert!(w.passed(), "{}: {w:?}", case.name());
        }
    }

    #[test]
    fn sl2_verifies_in_low_degrees() {
        let r = verify_module(&Case::sl(2, &f3()), 12).unwrap();
        assert!(r.passed, "{:?}", r.mismatches());
        assert_eq!(r.rows.len(), 13);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["rows"][0]["match"].as_bool().unwrap());
    }

    #[test]
    fn wrong_prediction_is_reported() {
        let row = compare(4, 1, 2);
        assert!(!row.matches);
    }
}
