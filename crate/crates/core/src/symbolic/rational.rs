//! Exact rationals.
//!
//! The coefficient field is `num_rational::BigRational`, which already keeps
//! fractions reduced with a positive denominator. This module only adds the
//! small constructors and combinatorial helpers used throughout the crate.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rising factorial `(x)_p = x (x+1) ... (x+p-1)`.
pub fn pochhammer(x: &Rational, p: u32) -> Rational {
    let mut acc = Rational::one();
    let mut cur = x.clone();
    for _ in 0..p {
        acc *= &cur;
        cur += Rational::one();
    }
    acc
}

/// Integer rising factorial, convenient for integer arguments.
pub fn pochhammer_i(x: i64, p: u32) -> Rational {
    pochhammer(&qi(x), p)
}

pub fn factorial(n: u32) -> Rational {
    pochhammer_i(1, n)
}

pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || k > n || n < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= qi(n - j);
        acc /= qi(j + 1);
    }
    acc
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Canonical `"p/q"` text form (denominator always printed).
pub fn to_string(r: &Rational) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or `"p"`. Returns `None` on malformed input or a zero denominator.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Integer value if `r` is integral.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for r in [q(3, 4), q(-7, 2), qi(0), qi(5)] {
            assert_eq!(parse(&to_string(&r)), Some(r));
        }
        assert_eq!(to_string(&qi(0)), "0/1");
        assert_eq!(parse("6/4"), Some(q(3, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn pochhammer_and_binomial() {
        assert_eq!(pochhammer_i(3, 0), qi(1));
        assert_eq!(pochhammer_i(3, 3), qi(60));
        assert_eq!(pochhammer_i(-2, 3), qi(0));
        assert_eq!(binomial(5, 2), qi(10));
        assert_eq!(binomial(5, 6), qi(0));
    }
}
