//! Krawtchouk polynomials `K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)` through
//! their terminating sum.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::report::Report;
use crate::symbolic::rational::{self, binomial, factorial, pochhammer_i, qi, Rational};
use crate::symbolic::{MultiPoly, QMatrix, RationalFn, Vars};
use crate::Error;

fn check_range(n: i64, x: i64, big_n: i64) -> Result<(), Error> {
    if big_n < 0 || !(0..=big_n).contains(&n) || !(0..=big_n).contains(&x) {
        return Err(Error::IndexOutOfRange(alloc::format!(
            "K_{}({}) with N = {}",
            n,
            x,
            big_n
        )));
    }
    Ok(())
}

/// Coefficient of `p^{-k}` in the terminating sum.
fn term(n: i64, x: i64, big_n: i64, k: u32) -> Rational {
    pochhammer_i(-n, k) * pochhammer_i(-x, k) / (factorial(k) * pochhammer_i(-big_n, k))
}

pub fn krawtchouk_eval(n: i64, x: i64, p: &Rational, big_n: i64) -> Result<Rational, Error> {
    check_range(n, x, big_n)?;
    if p.is_zero() {
        return Err(Error::InvalidParams("Krawtchouk parameter p = 0".into()));
    }
    let inv = Rational::one() / p;
    let mut acc = Rational::zero();
    for k in 0..=n.min(x) as u32 {
        acc += term(n, x, big_n, k) * rational::pow(&inv, k);
    }
    Ok(acc)
}

/// `K_n(x; p, N)` as a rational function of the parameter variable `p`.
pub fn krawtchouk_symbolic(n: i64, x: i64, big_n: i64) -> Result<RationalFn, Error> {
    check_range(n, x, big_n)?;
    let v = Vars::new(&["p"]);
    let top = n.min(x) as u32;
    let num = MultiPoly::from_terms(&v, (0..=top).map(|k| (vec![top - k], term(n, x, big_n, k))))?;
    let den = MultiPoly::monomial(&v, vec![top], Rational::one());
    Ok(RationalFn::new(num, den)?)
}

/// Binomial weight `C(N, x) p^x (1-p)^{N-x}`.
pub fn weight(x: i64, p: &Rational, big_n: i64) -> Rational {
    binomial(big_n, x)
        * rational::pow(p, x as u32)
        * rational::pow(&(Rational::one() - p), (big_n - x) as u32)
}

/// Squared norm `((-1)^n n! / (-N)_n) ((1-p)/p)^n`.
pub fn norm(n: i64, p: &Rational, big_n: i64) -> Rational {
    let sign = if n % 2 == 0 { qi(1) } else { qi(-1) };
    let r = (Rational::one() - p) / p;
    sign * factorial(n as u32) / pochhammer_i(-big_n, n as u32) * rational::pow(&r, n as u32)
}

pub fn gram_matrix(p: &Rational, big_n: i64) -> Result<QMatrix, Error> {
    let size = (big_n + 1) as usize;
    let mut k = Vec::with_capacity(size * size);
    for n in 0..=big_n {
        for x in 0..=big_n {
            k.push(krawtchouk_eval(n, x, p, big_n)?);
        }
    }
    let w: Vec<Rational> = (0..=big_n).map(|x| weight(x, p, big_n)).collect();
    Ok(QMatrix::from_fn(size, size, |i, j| {
        let mut acc = Rational::zero();
        for x in 0..size {
            acc += &w[x] * &k[i * size + x] * &k[j * size + x];
        }
        acc
    }))
}

pub fn orthogonality_check(p: &Rational, big_n: i64) -> Result<Report, Error> {
    let g = gram_matrix(p, big_n)?;
    let expect = QMatrix::from_fn(g.rows(), g.cols(), |i, j| {
        if i == j {
            norm(i as i64, p, big_n)
        } else {
            Rational::zero()
        }
    });
    let mut r = Report::new();
    let tag = alloc::format!("N={},p={}", big_n, p);
    r.check(
        "krawtchouk",
        &tag,
        "Gram matrix equals diag(h)",
        g == expect,
        || alloc::format!("{:?}", g),
    );
    Ok(r)
}

/// `sum_n C(N,n) K_n(x) t^n = (1 - ((1-p)/p) t)^x (1+t)^{N-x}` as
/// polynomials in `t`.
pub fn generating_function_check(x: i64, p: &Rational, big_n: i64) -> Result<bool, Error> {
    let v = Vars::new(&["t"]);
    let t = MultiPoly::var(&v, 0);
    let one = MultiPoly::one(&v);
    let mut lhs = MultiPoly::zero(&v);
    for n in 0..=big_n {
        let c = binomial(big_n, n) * krawtchouk_eval(n, x, p, big_n)?;
        lhs = &lhs + &MultiPoly::monomial(&v, vec![n as u32], c);
    }
    let r = (Rational::one() - p) / p;
    let rhs = &(&one - &t.scale(&r)).pow(x as u32) * &(&one + &t).pow((big_n - x) as u32);
    Ok(lhs == rhs)
}

/// Squared determinant of `(t^n s^x K_n(x))` against
/// `(st)^{N(N+1)} prod h / prod w`. Returns both sides.
pub fn determinant_squared(
    p: &Rational,
    s: &Rational,
    t: &Rational,
    big_n: i64,
) -> Result<(Rational, Rational), Error> {
    let size = (big_n + 1) as usize;
    let mut m = QMatrix::zeros(size, size);
    for n in 0..=big_n {
        for x in 0..=big_n {
            let v = rational::pow(t, n as u32)
                * rational::pow(s, x as u32)
                * krawtchouk_eval(n, x, p, big_n)?;
            m.set(n as usize, x as usize, v);
        }
    }
    let d = m.det();
    let lhs = &d * &d;
    let mut rhs = rational::pow(&(s * t), (big_n * (big_n + 1)) as u32);
    for k in 0..=big_n {
        rhs = rhs * norm(k, p, big_n) / weight(k, p, big_n);
    }
    Ok((lhs, rhs))
}

pub fn self_duality_check(p: &Rational, big_n: i64) -> Result<bool, Error> {
    for n in 0..=big_n {
        for x in 0..=big_n {
            if krawtchouk_eval(n, x, p, big_n)? != krawtchouk_eval(x, n, p, big_n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All Krawtchouk identities for `N <= n_max` and each listed `p`.
pub fn suite(n_max: i64, ps: &[Rational]) -> Result<Report, Error> {
    let mut r = Report::new();
    for p in ps {
        for big_n in 0..=n_max {
            let tag = alloc::format!("N={},p={}", big_n, p);
            r.check(
                "krawtchouk",
                &tag,
                "self-duality K_n(x) = K_x(n)",
                self_duality_check(p, big_n)?,
                || "asymmetric table".into(),
            );
            let gf = (0..=big_n)
                .map(|x| generating_function_check(x, p, big_n))
                .collect::<Result<Vec<_>, _>>()?;
            r.check(
                "krawtchouk",
                &tag,
                "generating function",
                gf.iter().all(|&b| b),
                || {
                    alloc::format!(
                        "fails at x in {:?}",
                        gf.iter()
                            .enumerate()
                            .filter(|(_, b)| !**b)
                            .map(|(x, _)| x)
                            .collect::<Vec<_>>()
                    )
                },
            );
            r.extend(orthogonality_check(p, big_n)?);
            for (s, t) in [(qi(1), qi(1)), (qi(2), rational::q(1, 3))] {
                let (lhs, rhs) = determinant_squared(p, &s, &t, big_n)?;
                r.check(
                    "krawtchouk",
                    &tag,
                    "squared determinant identity",
                    lhs == rhs,
                    || alloc::format!("s={}, t={}: {} vs {}", s, t, lhs, rhs),
                );
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::q;

    #[test]
    fn boundary_values() {
        let p = q(1, 3);
        for big_n in 0..5 {
            for x in 0..=big_n {
                assert_eq!(krawtchouk_eval(0, x, &p, big_n).unwrap(), qi(1));
                assert_eq!(krawtchouk_eval(x, 0, &p, big_n).unwrap(), qi(1));
                if big_n > 0 {
                    let k1 = qi(1) - qi(x) / (&p * qi(big_n));
                    assert_eq!(krawtchouk_eval(1, x, &p, big_n).unwrap(), k1);
                }
            }
        }
    }

    #[test]
    fn brute_force_k2() {
        // 1 + (-2)(-1)/(1 (-2)) * 2 = -1
        assert_eq!(krawtchouk_eval(2, 1, &q(1, 2), 2).unwrap(), qi(-1));
    }

    #[test]
    fn symbolic_matches_numeric() {
        let k = krawtchouk_symbolic(2, 3, 4).unwrap();
        for p in [q(1, 3), q(2, 5), qi(3)] {
            assert_eq!(
                k.evaluate(core::slice::from_ref(&p)).unwrap(),
                krawtchouk_eval(2, 3, &p, 4).unwrap()
            );
        }
    }

    #[test]
    fn small_gram_matrices() {
        let g = gram_matrix(&q(1, 3), 1).unwrap();
        assert_eq!(g, QMatrix::from_vec(2, 2, vec![qi(1), qi(0), qi(0), qi(2)]));
        let g = gram_matrix(&q(1, 2), 0).unwrap();
        assert_eq!(g, QMatrix::from_vec(1, 1, vec![qi(1)]));
    }

    #[test]
    fn invalid_inputs() {
        assert!(krawtchouk_eval(1, 1, &qi(0), 2).is_err());
        assert!(krawtchouk_eval(3, 1, &q(1, 2), 2).is_err());
    }
}
