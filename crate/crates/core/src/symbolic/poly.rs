use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::SymbolicError;

/// An ordered tuple of variable names. Polynomials only combine when their
/// tuples coincide, so `(c1, c2)`, `(psi1, psi2)` and `(x1, x2)` can never be
/// mixed by accident.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        Vars(
            names
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .into(),
        )
    }

    /// `(c1, c2)` with `c_i = cos t_i`.
    pub fn c() -> Self {
        Vars::new(&["c1", "c2"])
    }

    pub fn psi() -> Self {
        Vars::new(&["psi1", "psi2"])
    }

    pub fn x() -> Self {
        Vars::new(&["x1", "x2"])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn describe(&self) -> String {
        alloc::format!("({})", self.0.join(","))
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        p.add_term(vec![0; vars.arity()], c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        MultiPoly::constant(vars, Rational::one())
    }

    /// The coordinate function for variable `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        let mut e = vec![0; vars.arity()];
        e[idx] = 1;
        MultiPoly::monomial(vars, e, Rational::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, SymbolicError> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| SymbolicError::UnknownVariable(name.to_string()))?;
        Ok(MultiPoly::var(vars, idx))
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.arity(), "exponent vector length");
        let mut p = MultiPoly::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Result<Self, SymbolicError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.arity() {
                return Err(SymbolicError::Arity {
                    expected: vars.arity(),
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(Monomial(exps)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.arity()])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    /// `Some(d)` if every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<(), SymbolicError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(SymbolicError::VariableMismatch {
                left: self.vars.describe(),
                right: other.vars.describe(),
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                acc.entry(Monomial(e)).and_modify(|v| *v += &c).or_insert(c);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `idx`.
    pub fn derive(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[idx];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[idx] -= 1;
            out.add_term(e, c * rational::qi(k as i64));
        }
        out
    }

    pub fn derive_named(&self, name: &str) -> Result<MultiPoly, SymbolicError> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| SymbolicError::UnknownVariable(name.to_string()))?;
        Ok(self.derive(idx))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, SymbolicError> {
        if point.len() != self.vars.arity() {
            return Err(SymbolicError::Arity {
                expected: self.vars.arity(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                if k > 0 {
                    t *= rational::pow(x, k);
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(rational::to_f64(c), |acc, (&k, &x)| {
                        acc * libm::pow(x, k as f64)
                    })
            })
            .sum()
    }

    /// Composition: variable `i` is replaced by `images[i]`; all images share
    /// the target variable tuple.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, SymbolicError> {
        if images.len() != self.vars.arity() {
            return Err(SymbolicError::Arity {
                expected: self.vars.arity(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            if p.vars != target {
                return Err(SymbolicError::VariableMismatch {
                    left: target.describe(),
                    right: p.vars.describe(),
                });
            }
        }
        // powers of each image, computed lazily
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&p.vars)])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm.0, tc);
            }
        }
        Ok(out)
    }

    /// Same polynomial with variables reordered: new variable `j` is old
    /// variable `perm[j]`. Used for the swap `c1 <-> c2`.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e: Vec<u32> = perm.iter().map(|&p| m.0[p]).collect();
            out.add_term(e, c.clone());
        }
        out
    }

    /// Relabels the variable tuple without touching exponents.
    pub fn rename_vars(&self, vars: &Vars) -> Result<MultiPoly, SymbolicError> {
        if vars.arity() != self.vars.arity() {
            return Err(SymbolicError::Arity {
                expected: self.vars.arity(),
                got: vars.arity(),
            });
        }
        Ok(MultiPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let mut acc = match it.next() {
            Some(m) => m.0.clone(),
            None => return vec![0; self.vars.arity()],
        };
        for m in it {
            for (a, b) in acc.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        acc
    }

    pub fn div_monomial(&self, exps: &[u32]) -> Option<MultiPoly> {
        let d = Monomial(exps.to_vec());
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if !d.divides(m) {
                return None;
            }
            let e = m.0.iter().zip(exps).map(|(a, b)| a - b).collect();
            out.add_term(e, c.clone());
        }
        Some(out)
    }

    pub fn mul_monomial(&self, exps: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial(m.0.iter().zip(exps).map(|(a, b)| a + b).collect()),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if self.vars != divisor.vars {
            return None;
        }
        let (dlead, dcoeff) = divisor.leading_term()?;
        let (dlead, dcoeff) = (dlead.clone(), dcoeff.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((rlead, rcoeff)) = rem.leading_term() {
            if !dlead.divides(rlead) {
                return None;
            }
            let e: Vec<u32> = rlead.0.iter().zip(&dlead.0).map(|(a, b)| a - b).collect();
            let c = rcoeff / &dcoeff;
            let step = divisor.mul_monomial(&e).scale(&c);
            quot.add_term(e, c);
            rem = &rem - &step;
        }
        Some(quot)
    }

    /// True if every exponent of variable `idx` has the given parity.
    pub fn exponents_have_parity(&self, idx: usize, parity: u32) -> bool {
        self.terms.keys().all(|m| m.0[idx] % 2 == parity % 2)
    }

    pub fn map_coeffs<F: Fn(&Rational) -> Rational>(&self, f: F) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.0.clone(), f(c));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(alloc::format!("{}", abs));
            }
            for (name, &k) in names.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(alloc::format!("{}^{}", name, k)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                self.$checked(rhs)
                    .expect("polynomial variable tuples differ")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self)
                    .$checked(&rhs)
                    .expect("polynomial variable tuples differ")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        (&self).neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{q, qi};

    fn c1() -> MultiPoly {
        MultiPoly::var(&Vars::c(), 0)
    }
    fn c2() -> MultiPoly {
        MultiPoly::var(&Vars::c(), 1)
    }

    #[test]
    fn psi1_at_identity_is_two() {
        let p = &c1().pow(2) + &c2().pow(2);
        assert_eq!(p.evaluate(&[qi(1), qi(1)]).unwrap(), qi(2));
    }

    #[test]
    fn power_rule() {
        let p = &c1().pow(2) * &c2().pow(2);
        let d = p.derive(0);
        assert_eq!(d, MultiPoly::monomial(&Vars::c(), vec![1, 2], qi(2)));
    }

    #[test]
    fn affine_substitution() {
        // 2 psi1 - 2 with psi1 -> (x1 + 2)/2 is x1
        let psi = Vars::psi();
        let x = Vars::x();
        let p = &MultiPoly::var(&psi, 0).scale(&qi(2)) - &MultiPoly::constant(&psi, qi(2));
        let psi1 = (&MultiPoly::var(&x, 0) + &MultiPoly::constant(&x, qi(2))).scale(&q(1, 2));
        let psi2 = MultiPoly::var(&x, 1);
        let r = p.substitute(&[psi1, psi2]).unwrap();
        assert_eq!(r, MultiPoly::var(&x, 0));
    }

    #[test]
    fn mismatched_vars_are_rejected() {
        let a = MultiPoly::var(&Vars::c(), 0);
        let b = MultiPoly::var(&Vars::psi(), 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(SymbolicError::VariableMismatch { .. })
        ));
        assert!(matches!(
            a.evaluate(&[qi(1)]),
            Err(SymbolicError::Arity { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let a = &c1() + &c2();
        let b = &c1() - &c2();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &MultiPoly::one(&Vars::c())).div_exact(&b), None);
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = &(&c1().pow(2).scale(&qi(2)) - &c2().scale(&q(1, 2))) + &MultiPoly::one(&Vars::c());
        assert_eq!(alloc::format!("{}", p), "2*c1^2 - 1/2*c2 + 1");
    }
}
