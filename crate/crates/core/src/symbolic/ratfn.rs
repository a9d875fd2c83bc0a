//! Quotients of polynomials.
//!
//! Simplification is deliberately light: monomial content is cancelled, the
//! denominator is scaled to leading coefficient one, and an exact division is
//! attempted. Equality never relies on reduced form; it cross-multiplies.

use core::fmt;

use num_traits::{One, Zero};

use super::poly::{MultiPoly, Vars};
use super::rational::Rational;
use super::SymbolicError;

#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        if num.vars() != den.vars() {
            return Err(SymbolicError::VariableMismatch {
                left: num.vars().describe(),
                right: den.vars().describe(),
            });
        }
        let mut r = RationalFn { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFn { num: p, den }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        RationalFn::from_poly(MultiPoly::constant(vars, c))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.den.vars());
            return;
        }
        let mn = self.num.monomial_content();
        let md = self.den.monomial_content();
        let common: alloc::vec::Vec<u32> = mn.iter().zip(&md).map(|(a, b)| *a.min(b)).collect();
        if common.iter().any(|&e| e > 0) {
            self.num = self
                .num
                .div_monomial(&common)
                .expect("monomial content divides");
            self.den = self
                .den
                .div_monomial(&common)
                .expect("monomial content divides");
        }
        if !self.den.is_constant() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = MultiPoly::one(self.den.vars());
            }
        }
        let lead = self
            .den
            .leading_term()
            .map(|(_, c)| c.clone())
            .expect("nonzero");
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFn) -> Result<RationalFn, SymbolicError> {
        if self.den == other.den {
            return RationalFn::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        // one denominator dividing the other avoids squaring the size
        if let Some(f) = other.den.div_exact(&self.den) {
            let n = &self.num.checked_mul(&f)? + &other.num;
            return RationalFn::new(n, other.den.clone());
        }
        if let Some(f) = self.den.div_exact(&other.den) {
            let n = &self.num + &other.num.checked_mul(&f)?;
            return RationalFn::new(n, self.den.clone());
        }
        let n = &self.num.checked_mul(&other.den)? + &other.num.checked_mul(&self.den)?;
        RationalFn::new(n, self.den.checked_mul(&other.den)?)
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFn) -> Result<RationalFn, SymbolicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> Result<RationalFn, SymbolicError> {
        RationalFn::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn, SymbolicError> {
        if other.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        RationalFn::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    pub fn scale(&self, c: &Rational) -> RationalFn {
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .renormalized()
    }

    fn renormalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Zero test by clearing denominators.
    pub fn equals(&self, other: &RationalFn) -> Result<bool, SymbolicError> {
        let l = self.num.checked_mul(&other.den)?;
        let r = other.num.checked_mul(&self.den)?;
        Ok(l == r)
    }

    /// The polynomial this quotient equals, or `NonPolynomial` if the
    /// denominator does not cancel.
    pub fn into_poly(self) -> Result<MultiPoly, SymbolicError> {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            debug_assert!(!c.is_zero());
            return Ok(self.num.scale(&(Rational::one() / c)));
        }
        self.num
            .div_exact(&self.den)
            .ok_or(SymbolicError::NonPolynomial)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, SymbolicError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        Ok(self.num.evaluate(point)? / d)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{q, qi};

    #[test]
    fn cancels_and_normalizes() {
        let v = Vars::new(&["p"]);
        let p = MultiPoly::var(&v, 0);
        let one = MultiPoly::one(&v);
        // (2p^2 - 2p) / (2p) = p - 1
        let num = &p.pow(2).scale(&qi(2)) - &p.scale(&qi(2));
        let r = RationalFn::new(num, p.scale(&qi(2))).unwrap();
        assert_eq!(r.clone().into_poly().unwrap(), &p - &one);
        // 1/(2p) keeps a monic denominator
        let r = RationalFn::new(one.clone(), p.scale(&qi(2))).unwrap();
        assert_eq!(r.den(), &p);
        assert_eq!(r.num(), &MultiPoly::constant(&v, q(1, 2)));
        assert_eq!(r.into_poly(), Err(SymbolicError::NonPolynomial));
    }

    #[test]
    fn field_operations() {
        let v = Vars::new(&["p"]);
        let p = RationalFn::from_poly(MultiPoly::var(&v, 0));
        let one = RationalFn::constant(&v, qi(1));
        let inv = one.div(&p).unwrap();
        assert!(inv.mul(&p).unwrap().equals(&one).unwrap());
        let s = inv.add(&inv).unwrap().sub(&inv).unwrap();
        assert_eq!(s, inv);
        assert!(RationalFn::new(MultiPoly::one(&v), MultiPoly::zero(&v)).is_err());
    }
}
