//! Leading terms `q_{nu_i, sigma_k}` in `(c1, c2)`, the matrix `Q0`, and the
//! matrix weight `S = Q0 Q0^T`.

use alloc::format;
use alloc::string::String;
use alloc::vec;

use num_traits::One;

use crate::coords;
use crate::lie::PairParams;
use crate::report::Report;
use crate::symbolic::rational::{binomial, factorial, pochhammer_i, qi, Rational};
use crate::symbolic::{symmetric_reduce, MultiPoly, PolyMatrix, Vars};
use crate::Error;

/// One leading-term polynomial, with bottom index `i` and M-type `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTermQ {
    pub params: PairParams,
    pub i: i64,
    pub k: i64,
    pub poly: MultiPoly,
}

impl LeadingTermQ {
    /// Homogeneous of degree `a + 2b + 2i`, `c1`-exponents of parity
    /// `a + b - k`, `c2`-exponents of parity `b + k`.
    pub fn satisfies_invariants(&self) -> bool {
        let PairParams { a, b, .. } = self.params;
        self.poly.homogeneous_degree() == Some((a + 2 * b + 2 * self.i) as u32)
            && self
                .poly
                .exponents_have_parity(0, (a + b - self.k).rem_euclid(2) as u32)
            && self
                .poly
                .exponents_have_parity(1, (b + self.k).rem_euclid(2) as u32)
    }
}

pub fn q_poly(params: &PairParams, i: i64, k: i64) -> Result<LeadingTermQ, Error> {
    params.require_canonical()?;
    let PairParams { a, b, .. } = *params;
    if !(0..=a).contains(&i) || !(0..=a).contains(&k) {
        return Err(Error::IndexOutOfRange(format!(
            "(i, k) = ({}, {}) with a = {}",
            i, k, a
        )));
    }
    let c = Vars::c();
    let c1 = MultiPoly::var(&c, 0);
    let c2 = MultiPoly::var(&c, 1);
    let delta = &c2.pow(2) - &c1.pow(2);
    let mut sum = MultiPoly::zero(&c);
    for p in 0..=i.min(k) as u32 {
        let coef = pochhammer_i(-i, p) * pochhammer_i(-k, p) / (factorial(p) * pochhammer_i(-a, p));
        let e2 = (b + 2 * i + k - 2 * p as i64) as u32;
        sum = &sum + &(&delta.pow(p) * &c2.pow(e2)).scale(&coef);
    }
    let poly = &c1.pow((a + b - k) as u32) * &sum;
    Ok(LeadingTermQ {
        params: *params,
        i,
        k,
        poly,
    })
}

/// `(Q0)_{i,k} = q_{nu_i, sigma_k}`: rows are bottom indices, columns M-types.
pub fn q0_matrix(params: &PairParams) -> Result<PolyMatrix, Error> {
    params.require_canonical()?;
    let n = params.size();
    let mut m = PolyMatrix::zeros(&Vars::c(), n, n);
    for i in 0..n {
        for k in 0..n {
            m.set(i, k, q_poly(params, i as i64, k as i64)?.poly);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrixS {
    pub params: PairParams,
    pub entries_c: PolyMatrix,
    pub entries_psi: PolyMatrix,
}

pub fn s_matrix(params: &PairParams) -> Result<WeightMatrixS, Error> {
    let q0 = q0_matrix(params)?;
    let entries_c = q0.mul(&q0.transpose())?;
    let entries_psi = entries_c.try_map(symmetric_reduce)?;
    Ok(WeightMatrixS {
        params: *params,
        entries_c,
        entries_psi,
    })
}

/// `S^a(x1, x2)`: the `b = 0` weight in `x`-coordinates.
pub fn s_x(params: &PairParams) -> Result<PolyMatrix, Error> {
    if params.b != 0 {
        return Err(Error::InvalidParams(format!(
            "S in x-coordinates is defined for b = 0, got b = {}",
            params.b
        )));
    }
    Ok(coords::matrix_psi_to_x(&s_matrix(params)?.entries_psi)?)
}

/// `(prod_n C(a,n))^{-2} (c1 c2)^{2b(a+1)} (c1 c2 (c1^2 - c2^2))^{a(a+1)}`.
pub fn det_s_closed_form(params: &PairParams) -> MultiPoly {
    let PairParams { a, b, .. } = *params;
    let c = Vars::c();
    let c1 = MultiPoly::var(&c, 0);
    let c2 = MultiPoly::var(&c, 1);
    let mut prod = Rational::one();
    for n in 0..=a {
        prod *= binomial(a, n);
    }
    let c12 = &c1 * &c2;
    let disc = &c12 * &(&c1.pow(2) - &c2.pow(2));
    (&c12.pow((2 * b * (a + 1)) as u32) * &disc.pow((a * (a + 1)) as u32))
        .scale(&(Rational::one() / (&prod * &prod)))
}

pub fn det_s_check(params: &PairParams) -> Result<Report, Error> {
    let s = s_matrix(params)?;
    let det = s.entries_c.det()?;
    let expect = det_s_closed_form(params);
    let mut r = Report::new();
    r.check(
        "weight",
        &params.tag(),
        "det S closed form",
        det == expect,
        || format!("det S - closed form = {}", &det - &expect),
    );
    Ok(r)
}

/// `q_{i,k}(c2, c1) = q_{i,a-k}(c1, c2)`, i.e. `Q0(swap) = Q0 J`.
pub fn weyl_symmetry_check(params: &PairParams) -> Result<Report, Error> {
    let q0 = q0_matrix(params)?;
    let n = params.size();
    let swapped = q0.permute_vars(&[1, 0]);
    let j = PolyMatrix::flip(&Vars::c(), n);
    let mut r = Report::new();
    let mut bad = vec![];
    for i in 0..n {
        for k in 0..n {
            if swapped.get(i, k) != q0.get(i, n - 1 - k) {
                bad.push((i, k));
            }
        }
    }
    let tag = params.tag();
    r.check(
        "weight",
        &tag,
        "entrywise swap q(i,k)(c2,c1) = q(i,a-k)(c1,c2)",
        bad.is_empty(),
        || format!("fails at {:?}", bad),
    );
    let qj = q0.mul(&j)?;
    r.check("weight", &tag, "Q0(swap) = Q0 J", swapped == qj, || {
        "matrix identity fails".into()
    });
    Ok(r)
}

/// Structural properties of `Q0` and `S`.
pub fn structure_check(params: &PairParams) -> Result<Report, Error> {
    let tag = params.tag();
    let mut r = Report::new();
    let n = params.size();
    let mut bad = vec![];
    for i in 0..n as i64 {
        for k in 0..n as i64 {
            if !q_poly(params, i, k)?.satisfies_invariants() {
                bad.push((i, k));
            }
        }
    }
    r.check(
        "weight",
        &tag,
        "leading terms homogeneous with fixed parities",
        bad.is_empty(),
        || format!("fails at {:?}", bad),
    );

    let q0 = q0_matrix(params)?;
    let one = [qi(1), qi(1)];
    let at_e = q0.evaluate(&one)?;
    r.check(
        "weight",
        &tag,
        "Q0(e) all ones",
        (0..n).all(|i| (0..n).all(|k| at_e.get(i, k).is_one())),
        || format!("{:?}", at_e),
    );

    let s = s_matrix(params)?;
    let PairParams { a, b, .. } = *params;
    let homog = (0..n).all(|i| {
        (0..n).all(|j| {
            s.entries_c.get(i, j).homogeneous_degree()
                == Some((2 * a + 4 * b + 2 * (i + j) as i64) as u32)
        })
    });
    r.check(
        "weight",
        &tag,
        "S entries homogeneous of degree 2a+4b+2i+2j",
        homog,
        || String::from("degree mismatch"),
    );
    r.check(
        "weight",
        &tag,
        "S symmetric",
        s.entries_c.is_symmetric() && s.entries_psi.is_symmetric(),
        || String::from("asymmetric"),
    );
    let s_e = s.entries_c.evaluate(&one)?;
    r.check(
        "weight",
        &tag,
        "S(e) entries equal a+1",
        (0..n).all(|i| (0..n).all(|j| *s_e.get(i, j) == qi(a + 1))),
        || format!("{:?}", s_e),
    );
    let back = coords::matrix_psi_to_c(&s.entries_psi)?;
    r.check(
        "weight",
        &tag,
        "symmetric reduction round trip",
        back == s.entries_c,
        || String::from("substitution differs"),
    );

    let base = s_matrix(&PairParams::new(params.m, a, 0)?)?.entries_psi;
    let psi2b = MultiPoly::var(&Vars::psi(), 1).pow(b as u32);
    r.check(
        "weight",
        &tag,
        "S(a,b) = psi2^b S(a,0)",
        base.scale_poly(&psi2b) == s.entries_psi,
        || String::from("b-dependence is not scalar"),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, a: i64, b: i64) -> PairParams {
        PairParams::new(m, a, b).unwrap()
    }

    fn c(e: [u32; 2]) -> MultiPoly {
        MultiPoly::monomial(&Vars::c(), e.to_vec(), qi(1))
    }

    #[test]
    fn q0_for_a1_b0() {
        let q0 = q0_matrix(&p(3, 1, 0)).unwrap();
        assert_eq!(q0.get(0, 0), &c([1, 0]));
        assert_eq!(q0.get(0, 1), &c([0, 1]));
        assert_eq!(q0.get(1, 0), &c([1, 2]));
        assert_eq!(q0.get(1, 1), &c([2, 1]));
    }

    #[test]
    fn scalar_case() {
        let s = s_matrix(&p(4, 0, 2)).unwrap();
        assert_eq!(s.entries_c.get(0, 0), &c([4, 4]));
        assert_eq!(
            s.entries_psi.get(0, 0),
            &MultiPoly::var(&Vars::psi(), 1).pow(2)
        );
    }

    #[test]
    fn first_m_type_column() {
        // k = 1: ((a-i)/a) c1^{a+b-1} c2^{b+2i+1} + (i/a) c1^{a+b+1} c2^{b+2i-1}
        let (a, b, i) = (3, 1, 2);
        let got = q_poly(&p(3, a, b), i, 1).unwrap().poly;
        let e = |x: i64, y: i64| vec![x as u32, y as u32];
        let expect = MultiPoly::from_terms(
            &Vars::c(),
            [
                (
                    e(a + b - 1, b + 2 * i + 1),
                    crate::symbolic::rational::q(a - i, a),
                ),
                (
                    e(a + b + 1, b + 2 * i - 1),
                    crate::symbolic::rational::q(i, a),
                ),
            ],
        )
        .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn determinant_and_symmetry_small() {
        for (a, b) in [(0, 0), (1, 0), (2, 1)] {
            assert!(!det_s_check(&p(3, a, b)).unwrap().has_failures());
            assert!(!weyl_symmetry_check(&p(3, a, b)).unwrap().has_failures());
        }
    }

    #[test]
    fn x_weight_needs_b_zero() {
        assert!(s_x(&p(3, 1, 1)).is_err());
        assert_eq!(
            s_x(&p(3, 0, 0)).unwrap(),
            PolyMatrix::identity(&Vars::x(), 1)
        );
    }
}
