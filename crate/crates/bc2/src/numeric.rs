//! Floating-point cross-check of the exact Gram blocks by tensor-product
//! Gauss-Legendre quadrature in `t`, using the `x`-coordinate polynomials
//! and the weight written in `x`.

use std::f64::consts::FRAC_PI_2;
use std::num::NonZeroUsize;

use bc2_core::leading::s_x;
use bc2_core::lie::PairParams;
use bc2_core::orthogonality::GramTable;
use bc2_core::report::Report;
use bc2_core::symbolic::rational::to_f64;
use bc2_core::symbolic::PolyMatrix;
use gauss_quad::GaussLegendre;

use crate::error::CliError;

pub const DEFAULT_ORDER: usize = 64;
pub const REL_TOL: f64 = 1e-8;

/// Quadrature nodes on `[0, pi/2]` with weights.
fn nodes(order: usize) -> Result<Vec<(f64, f64)>, CliError> {
    let n =
        NonZeroUsize::new(order).ok_or_else(|| CliError::Invalid("quadrature order 0".into()))?;
    let rule = GaussLegendre::new(n);
    let half = FRAC_PI_2 / 2.0;
    Ok(rule
        .iter()
        .map(|&(x, w)| (half * (x + 1.0), half * w))
        .collect())
}

/// `x(t)` and `w(x(t)) |det dx/dt| / 2`.
fn point_and_weight(m: i64, b: i64, t1: f64, t2: f64) -> ((f64, f64), f64) {
    let (u1, u2) = ((2.0 * t1).cos(), (2.0 * t2).cos());
    let x1 = u1 + u2;
    let x2 = u1 * u2;
    let disc = (x1 * x1 - 4.0 * x2).max(0.0);
    let w = (1.0 - x1 + x2).powi((m - 2) as i32) * (1.0 + x1 + x2).powi(b as i32) * disc.sqrt();
    let jac = (4.0 * (2.0 * t1).sin() * (2.0 * t2).sin() * (u1 - u2)).abs();
    ((x1, x2), w * jac / 2.0)
}

fn mat_mul(a: &[f64], b: &[f64], n: usize, bt: bool) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                let bkj = if bt { b[j * n + k] } else { b[k * n + j] };
                acc += a[i * n + k] * bkj;
            }
            out[i * n + j] = acc;
        }
    }
    out
}

/// `int_I M w dx` by quadrature, for `M` in `x`.
pub fn region_integral_numeric(
    m: i64,
    b: i64,
    mat: &PolyMatrix,
    order: usize,
) -> Result<Vec<f64>, CliError> {
    let pts = nodes(order)?;
    let mut acc = vec![0.0; mat.rows() * mat.cols()];
    for &(t1, w1) in &pts {
        for &(t2, w2) in &pts {
            let ((x1, x2), w) = point_and_weight(m, b, t1, t2);
            for (a, v) in acc.iter_mut().zip(mat.evaluate_f64(&[x1, x2])) {
                *a += w1 * w2 * w * v;
            }
        }
    }
    Ok(acc)
}

/// `((x, y), block)` with the block stored row-major.
pub type NumericBlock = ((usize, usize), Vec<f64>);

/// Numeric Gram blocks in the same layout as the exact table.
pub fn numeric_gram(table: &GramTable, order: usize) -> Result<Vec<NumericBlock>, CliError> {
    let params = &table.params;
    let n = params.size();
    let s = s_x(&PairParams::new(params.m, params.a, 0)?)?;
    let pts = nodes(order)?;
    let mut acc: Vec<((usize, usize), Vec<f64>)> = table
        .blocks
        .keys()
        .map(|&k| (k, vec![0.0; n * n]))
        .collect();
    for &(t1, w1) in &pts {
        for &(t2, w2) in &pts {
            let ((x1, x2), w) = point_and_weight(params.m, params.b, t1, t2);
            let sv = s.evaluate_f64(&[x1, x2]);
            let rv: Vec<Vec<f64>> = table
                .ops
                .iter()
                .map(|op| op.r_x.evaluate_f64(&[x1, x2]))
                .collect();
            let left: Vec<Vec<f64>> = rv.iter().map(|r| mat_mul(r, &sv, n, false)).collect();
            for ((x, y), out) in acc.iter_mut() {
                let g = mat_mul(&left[*x], &rv[*y], n, true);
                for (o, v) in out.iter_mut().zip(g) {
                    *o += w1 * w2 * w * v;
                }
            }
        }
    }
    Ok(acc)
}

/// Compares every exact Gram entry with quadrature. Diagonal-block diagonal
/// entries are compared relatively, all other entries against the largest
/// diagonal value of the two blocks involved.
pub fn numeric_crosscheck(
    table: &GramTable,
    order: usize,
    tol: f64,
) -> Result<(Report, f64), CliError> {
    let n = table.params.size();
    let numeric = numeric_gram(table, order)?;
    let diag_scale = |x: usize| -> f64 {
        let g = &table.blocks[&(x, x)];
        (0..n)
            .map(|k| to_f64(g.get(k, k)).abs())
            .fold(0.0, f64::max)
    };
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for ((x, y), num) in &numeric {
        let exact = &table.blocks[&(*x, *y)];
        let scale = diag_scale(*x).max(diag_scale(*y));
        for i in 0..n {
            for j in 0..n {
                let e = to_f64(exact.get(i, j));
                let denom = if x == y && i == j { e.abs() } else { scale };
                let dev = (num[i * n + j] - e).abs() / denom;
                worst = worst.max(dev);
                if dev > tol || !dev.is_finite() {
                    bad.push(format!(
                        "{:?}x{:?}[{},{}]: {:e}",
                        table.degrees[*x], table.degrees[*y], i, j, dev
                    ));
                }
            }
        }
    }
    let mut r = Report::new();
    let tag = format!("{},order={}", table.params.tag(), order);
    r.check(
        "orthogonality",
        &tag,
        &format!("quadrature agrees with exact integrals to {:e}", tol),
        bad.is_empty(),
        || bad.join("; "),
    );
    Ok((r, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bc2_core::symbolic::Vars;

    #[test]
    fn region_mass_m3() {
        let one = PolyMatrix::identity(&Vars::x(), 1);
        let v = region_integral_numeric(3, 0, &one, DEFAULT_ORDER).unwrap();
        assert!((v[0] - 8.0 / 9.0).abs() < 1e-10, "{}", v[0]);
    }
}
