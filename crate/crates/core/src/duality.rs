//! The regime `b <= -a`, obtained from `(m, a, -a-b)` by conjugation with the
//! flip matrix `J`. The point `a = b = 0` is its own dual.

use alloc::format;

use num_traits::Zero;

use crate::casimir::{lambda_d, shift_matrix, x_operator_family};
use crate::expansion::{matrix_op, pde_residual};
use crate::leading::s_matrix;
use crate::lie::{casimir_eigenvalue_ip, label_weight, MsfLabel, PairParams};
use crate::report::Report;
use crate::symbolic::{DerivIndex, MatrixDiffOp, PolyMatrix, QMatrix, Vars};
use crate::Error;

fn require_dual(params: &PairParams) -> Result<PairParams, Error> {
    if params.is_canonical() && params.dualize() != *params {
        return Err(Error::InvalidParams(format!(
            "{} is not in the dual regime",
            params.tag()
        )));
    }
    Ok(params.dualize())
}

fn flip_q(n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| {
        if i + j + 1 == n {
            crate::symbolic::rational::qi(1)
        } else {
            crate::symbolic::Rational::zero()
        }
    })
}

fn conj(m: &PolyMatrix) -> Result<PolyMatrix, Error> {
    let j = PolyMatrix::flip(m.vars(), m.rows());
    Ok(j.mul(m)?.mul(&j)?)
}

fn conj_q(m: &QMatrix) -> QMatrix {
    let j = flip_q(m.rows());
    j.mul(m).mul(&j)
}

/// `W^{mu*} = J W^mu J` in `psi`.
pub fn dual_weight(params: &PairParams) -> Result<PolyMatrix, Error> {
    let canon = require_dual(params)?;
    conj(&s_matrix(&canon)?.entries_psi)
}

/// `J R_d J` in `x`.
pub fn dual_polynomials(params: &PairParams, d1: i64, d2: i64) -> Result<PolyMatrix, Error> {
    let canon = require_dual(params)?;
    conj(&matrix_op(&canon, d1, d2)?.r_x)
}

/// Conjugated operator `R0 + J C^mu J + J (Lambda_0 + S) J` in `x`.
pub fn dual_pde_operator(params: &PairParams) -> Result<MatrixDiffOp, Error> {
    let canon = require_dual(params)?;
    let fam = x_operator_family(&canon)?;
    let n = canon.size();
    let v = Vars::x();
    let mut cmu = MatrixDiffOp::new(&v, n, crate::symbolic::Side::Right)?;
    for idx in [DerivIndex::D1, DerivIndex::D2] {
        cmu = cmu.with(idx, conj(&fam.cmu.coeff(idx))?)?;
    }
    let l0 = lambda_d(&canon, 0, 0);
    let s = shift_matrix(&canon);
    let constant = conj_q(&QMatrix::from_fn(n, n, |i, j| l0.get(i, j) + s.get(i, j)));
    Ok(fam.r0_x.tensor_identity(n)?.add(&cmu)?.add(
        &MatrixDiffOp::new(&v, n, crate::symbolic::Side::Right)?
            .with(DerivIndex::ID, PolyMatrix::from_constants(&v, &constant))?,
    )?)
}

/// Eigenvalues `c` of the dual labels `nu_i(mu*) + d1 lambda1 + d2 lambda2`,
/// computed from their weights.
pub fn dual_lambda(params: &PairParams, d1: i64, d2: i64) -> Result<QMatrix, Error> {
    let n = params.size();
    let mut out = QMatrix::zeros(n, n);
    for i in 0..n {
        let w = label_weight(params, &MsfLabel::new(i as i64, d1, d2))?;
        out.set(i, i, casimir_eigenvalue_ip(&w));
    }
    Ok(out)
}

pub fn duality_check(params: &PairParams, dmax: i64) -> Result<Report, Error> {
    let canon = require_dual(params)?;
    let tag = params.tag();
    let mut r = Report::new();
    let n = params.size();

    let w = dual_weight(params)?;
    let s = s_matrix(&canon)?.entries_psi;
    let flipped = (0..n).all(|i| (0..n).all(|j| w.get(i, j) == s.get(n - 1 - i, n - 1 - j)));
    r.check(
        "duality",
        &tag,
        "W^{mu*} = J W^mu J entrywise",
        flipped && w.is_symmetric(),
        || format!("{}", w),
    );

    let op = dual_pde_operator(params)?;
    for (d1, d2) in crate::orthogonality::degrees_up_to(dmax) {
        let lam = dual_lambda(params, d1, d2)?;
        let expected = conj_q(&lambda_d(&canon, d1, d2));
        r.check(
            "duality",
            &tag,
            &format!("dual eigenvalues at d=({},{}) equal J Lambda_d J", d1, d2),
            lam == expected,
            || format!("{:?} vs {:?}", lam, expected),
        );
        let res = pde_residual(&op, &dual_polynomials(params, d1, d2)?, &lam)?;
        r.check(
            "duality",
            &tag,
            &format!("conjugated PDE at d=({},{})", d1, d2),
            res.is_zero(),
            || format!("residual:\n{}", res),
        );
    }
    Ok(r)
}
