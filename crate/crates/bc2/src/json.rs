//! JSON forms of the exact objects. Rationals are `"p/q"` strings, polynomials
//! list their terms in descending graded-lex order.

use bc2_core::report::{Check, Report, Status};
use bc2_core::symbolic::rational::{self, Rational};
use bc2_core::symbolic::{MultiPoly, PolyMatrix, QMatrix, Vars};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub vars: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub suite: String,
    pub params: String,
    pub identity: String,
    pub status: String,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub pass: usize,
    pub fail: usize,
    pub reported: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub summary: SummaryJson,
    pub checks: Vec<CheckJson>,
}

pub fn rational_to_json(r: &Rational) -> String {
    rational::to_string(r)
}

pub fn rational_from_json(s: &str) -> Result<Rational, CliError> {
    rational::parse(s).ok_or_else(|| CliError::Invalid(format!("not a rational: '{}'", s)))
}

pub fn poly_to_json(p: &MultiPoly) -> PolyJson {
    PolyJson {
        vars: p.vars().names().to_vec(),
        terms: p
            .terms()
            .rev()
            .map(|(m, c)| TermJson {
                exp: m.0.clone(),
                coeff: rational_to_json(c),
            })
            .collect(),
    }
}

fn vars_from(names: &[String]) -> Vars {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Vars::new(&refs)
}

pub fn poly_from_json_in(vars: &Vars, j: &PolyJson) -> Result<MultiPoly, CliError> {
    if j.vars.as_slice() != vars.names() {
        return Err(CliError::Invalid(format!(
            "variables {:?} do not match {:?}",
            j.vars,
            vars.names()
        )));
    }
    let terms = j
        .terms
        .iter()
        .map(|t| Ok((t.exp.clone(), rational_from_json(&t.coeff)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(MultiPoly::from_terms(vars, terms)?)
}

pub fn poly_from_json(j: &PolyJson) -> Result<MultiPoly, CliError> {
    poly_from_json_in(&vars_from(&j.vars), j)
}

pub fn matrix_to_json(m: &PolyMatrix) -> MatrixJson {
    MatrixJson {
        vars: m.vars().names().to_vec(),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| poly_to_json(m.get(i, j))).collect())
            .collect(),
    }
}

pub fn matrix_from_json(j: &MatrixJson) -> Result<PolyMatrix, CliError> {
    let vars = vars_from(&j.vars);
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(CliError::Invalid(format!(
            "expected a {}x{} matrix",
            j.rows, j.cols
        )));
    }
    let entries = j
        .entries
        .iter()
        .flatten()
        .map(|p| poly_from_json_in(&vars, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::from_entries(&vars, j.rows, j.cols, entries)?)
}

pub fn qmatrix_to_json(m: &QMatrix) -> QMatrixJson {
    QMatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| rational_to_json(m.get(i, j)))
                    .collect()
            })
            .collect(),
    }
}

pub fn qmatrix_from_json(j: &QMatrixJson) -> Result<QMatrix, CliError> {
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(CliError::Invalid(format!(
            "expected a {}x{} matrix",
            j.rows, j.cols
        )));
    }
    let data = j
        .entries
        .iter()
        .flatten()
        .map(|s| rational_from_json(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_vec(j.rows, j.cols, data))
}

fn check_to_json(c: &Check) -> CheckJson {
    CheckJson {
        suite: c.suite.clone(),
        params: c.params.clone(),
        identity: c.identity.clone(),
        status: c.status.to_string(),
        residual: c.detail.clone(),
    }
}

pub fn report_to_json(r: &Report) -> ReportJson {
    ReportJson {
        summary: SummaryJson {
            pass: r.count(Status::Pass),
            fail: r.count(Status::Fail),
            reported: r.count(Status::Reported),
        },
        checks: r.checks.iter().map(check_to_json).collect(),
    }
}

pub fn to_string_pretty<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bc2_core::symbolic::rational::{q, qi};

    #[test]
    fn poly_round_trip() {
        let v = Vars::psi();
        let p =
            &MultiPoly::var(&v, 0).scale(&q(3, 2)) - &MultiPoly::monomial(&v, vec![1, 2], qi(7));
        let j = poly_to_json(&p);
        assert_eq!(j.terms[0].exp, vec![1, 2]);
        assert_eq!(j.terms[0].coeff, "-7/1");
        assert_eq!(poly_from_json(&j).unwrap(), p);
    }

    #[test]
    fn bad_rational_is_rejected() {
        assert!(rational_from_json("1/0").is_err());
        assert!(rational_from_json("x").is_err());
    }
}
