//! Closed forms as they are printed, kept separate from the derived values so
//! suites can compare the two.

use alloc::vec;
use alloc::vec::Vec;

use crate::casimir::XiConstants;
use crate::lie::{MsfLabel, PairParams};
use crate::symbolic::rational::{binomial, pochhammer_i, q, qi, Rational};
use crate::symbolic::{MultiPoly, PolyMatrix, QMatrix, Vars};
use crate::Error;

/// Printed constants in `psi1 = xi11 phi1 + xi01`, `psi2 = xi22 phi2 + xi12 phi1 + xi02`.
pub fn xi_printed(m: i64) -> XiConstants {
    XiConstants {
        xi11: q(2 * m, m + 2),
        xi01: q(4, m + 2),
        xi22: q(m - 1, m + 2),
        xi12: q(2 * (m + 1), (m + 2) * (m + 2)),
        xi02: q(2 * (m + 1) * (2 * m - 1), m * m * (m + 2) * (m + 2)),
    }
}

/// Printed inversion `phi1 = ((m+2) psi1 - 4) / m`.
pub fn phi1_printed(m: i64) -> MultiPoly {
    let v = Vars::psi();
    (&MultiPoly::var(&v, 0).scale(&qi(m + 2)) - &MultiPoly::constant(&v, qi(4))).scale(&q(1, m))
}

/// Printed inversion `phi2 = (m(m+1) psi2 - (m+1) psi1 + 2) / (m(m-1))`.
pub fn phi2_printed(m: i64) -> MultiPoly {
    let v = Vars::psi();
    let num = &(&MultiPoly::var(&v, 1).scale(&qi(m * (m + 1)))
        - &MultiPoly::var(&v, 0).scale(&qi(m + 1)))
        + &MultiPoly::constant(&v, qi(2));
    num.scale(&q(1, m * (m - 1)))
}

/// Printed coefficient table for the lowering moves.
pub fn lowering_moves_printed(params: &PairParams, label: &MsfLabel) -> [(MsfLabel, Rational); 7] {
    let PairParams { a, b, .. } = *params;
    let MsfLabel { i, d1, d2 } = *label;
    [
        (
            MsfLabel::new(i, d1 - 1, d2),
            qi(-2 * d1 * (d1 + 4 * d2 + 3) - 2 * d1 * (a + 2 * b + 2 * i)),
        ),
        (MsfLabel::new(i, d1 - 2, d2 + 1), qi(-2 * d1 * (d1 - 1))),
        (
            MsfLabel::new(i, d1 + 1, d2 - 1),
            qi(-2 * d2 * d2 - 2 * d2 * (b + i)),
        ),
        (
            MsfLabel::new(i - 1, d1, d2),
            qi(-2 * i * (b + i) - 2 * i * d2),
        ),
        (MsfLabel::new(i - 1, d1 - 1, d2 + 1), qi(-2 * i * d1)),
        (MsfLabel::new(i + 1, d1 - 1, d2), qi(-2 * (a - i) * d1)),
        (MsfLabel::new(i + 1, d1, d2 - 1), qi(-2 * (a - i) * d2)),
    ]
}

/// Printed closed form of `L^{-1}`.
pub fn l_inverse_printed(params: &PairParams) -> QMatrix {
    let PairParams { m, b, .. } = *params;
    let n = params.size();
    QMatrix::from_fn(n, n, |i, j| {
        if j > i {
            return qi(0);
        }
        let (i, j) = (i as i64, j as i64);
        binomial(i, j) * pochhammer_i(m, j as u32) / pochhammer_i(m + b + j, j as u32)
            * pochhammer_i(b + j + 1, (i - j) as u32)
            / pochhammer_i(m + 2 * j + b - 1, (i - j) as u32)
    })
}

/// Printed orthogonality constant `2^{2m+2b-10} m^2 (m^2-1)`.
pub fn orthogonality_constant_printed(m: i64, b: i64) -> Rational {
    let e = 2 * m + 2 * b - 10;
    let p = if e >= 0 {
        crate::symbolic::rational::pow(&qi(2), e as u32)
    } else {
        qi(1) / crate::symbolic::rational::pow(&qi(2), (-e) as u32)
    };
    p * qi(m * m * (m * m - 1))
}

fn lin(v: &Vars, c: Rational, terms: &[(usize, Rational)]) -> MultiPoly {
    let mut p = MultiPoly::constant(v, c);
    for (idx, k) in terms {
        p = &p + &MultiPoly::var(v, *idx).scale(k);
    }
    p
}

/// Printed `S` for `a = 1, 2` in `psi`, including the factor `psi2^b`.
pub fn s_psi_printed(a: i64, b: i64) -> Option<Result<PolyMatrix, Error>> {
    let v = Vars::psi();
    let p1 = MultiPoly::var(&v, 0);
    let p2 = MultiPoly::var(&v, 1);
    let entries: Vec<MultiPoly> = match a {
        1 => vec![p1.clone(), p2.scale(&qi(2)), p2.scale(&qi(2)), &p1 * &p2],
        2 => {
            let p11 = &p1 * &p1;
            let p22 = &p2 * &p2;
            let p12 = &p1 * &p2;
            let diag0 = &p11 - &p2;
            vec![
                diag0.clone(),
                p12.scale(&q(3, 2)),
                p22.scale(&qi(3)),
                p12.scale(&q(3, 2)),
                &p22.scale(&qi(2)) + &(&p11 * &p2).scale(&q(1, 4)),
                (&p12 * &p2).scale(&q(3, 2)),
                p22.scale(&qi(3)),
                (&p12 * &p2).scale(&q(3, 2)),
                &p22 * &diag0,
            ]
        }
        _ => return None,
    };
    let scalar = p2.pow(b as u32);
    let n = (a + 1) as usize;
    Some(
        PolyMatrix::from_entries(
            &v,
            n,
            n,
            entries.into_iter().map(|e| &e * &scalar).collect(),
        )
        .map_err(Error::from),
    )
}

/// Printed `S^1`, `S^2` in `x`.
pub fn s_x_printed(a: i64) -> Option<Result<PolyMatrix, Error>> {
    let v = Vars::x();
    // u = x1/2 + 1, w = x1 + x2 + 1
    let u = lin(&v, qi(1), &[(0, q(1, 2))]);
    let w = lin(&v, qi(1), &[(0, qi(1)), (1, qi(1))]);
    let entries: Vec<MultiPoly> = match a {
        1 => vec![
            u.clone(),
            w.scale(&q(1, 2)),
            w.scale(&q(1, 2)),
            (&u * &w).scale(&q(1, 4)),
        ],
        2 => {
            let uu = &u * &u;
            let ww = &w * &w;
            let d0 = &uu - &w.scale(&q(1, 4));
            let off1 = (&u * &w).scale(&q(3, 8));
            let off2 = ww.scale(&q(3, 16));
            let off3 = (&u * &ww).scale(&q(3, 32));
            vec![
                d0.clone(),
                off1.clone(),
                off2.clone(),
                off1,
                (&w * &(&w.scale(&qi(2)) + &uu)).scale(&q(1, 16)),
                off3.clone(),
                off2,
                off3,
                (&ww * &d0).scale(&q(1, 16)),
            ]
        }
        _ => return None,
    };
    let n = (a + 1) as usize;
    Some(PolyMatrix::from_entries(&v, n, n, entries).map_err(Error::from))
}
