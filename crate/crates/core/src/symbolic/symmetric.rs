//! Rewriting even, swap-invariant polynomials in `(c1, c2)` through
//! `psi1 = c1^2 + c2^2` and `psi2 = c1^2 c2^2`.

use alloc::string::ToString;
use alloc::vec;

use super::poly::{MultiPoly, Vars};
use super::SymbolicError;

/// Returns `r` in `(psi1, psi2)` with `r(c1^2 + c2^2, c1^2 c2^2) = p`.
pub fn symmetric_reduce(p: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
    let vars = p.vars();
    if vars.arity() != 2 {
        return Err(SymbolicError::Arity {
            expected: 2,
            got: vars.arity(),
        });
    }
    for idx in 0..2 {
        if !p.exponents_have_parity(idx, 0) {
            return Err(SymbolicError::Parity(vars.names()[idx].to_string()));
        }
    }
    if &p.permute_vars(&[1, 0]) != p {
        return Err(SymbolicError::Asymmetry);
    }

    // work in u = c1^2, v = c2^2
    let uv = Vars::new(&["u", "v"]);
    let mut rest = MultiPoly::from_terms(
        &uv,
        p.terms()
            .map(|(m, c)| (vec![m.0[0] / 2, m.0[1] / 2], c.clone())),
    )?;
    let e1 = &MultiPoly::var(&uv, 0) + &MultiPoly::var(&uv, 1);
    let e2 = &MultiPoly::var(&uv, 0) * &MultiPoly::var(&uv, 1);

    let psi = Vars::psi();
    let mut out = MultiPoly::zero(&psi);
    while let Some((m, c)) = rest.leading_term() {
        let (alpha, beta) = (m.0[0], m.0[1]);
        debug_assert!(alpha >= beta);
        let c = c.clone();
        let step = (&e1.pow(alpha - beta) * &e2.pow(beta)).scale(&c);
        rest = &rest - &step;
        out = &out + &MultiPoly::monomial(&psi, vec![alpha - beta, beta], c);
    }
    Ok(out)
}

/// `psi1 -> c1^2 + c2^2`, `psi2 -> c1^2 c2^2`.
pub fn psi_to_c(p: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
    let c = Vars::c();
    let c1 = MultiPoly::var(&c, 0);
    let c2 = MultiPoly::var(&c, 1);
    let psi1 = &c1.pow(2) + &c2.pow(2);
    let psi2 = &c1.pow(2) * &c2.pow(2);
    p.substitute(&[psi1, psi2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::qi;

    fn c(e: [u32; 2], k: i64) -> MultiPoly {
        MultiPoly::monomial(&Vars::c(), e.to_vec(), qi(k))
    }

    #[test]
    fn elementary_and_newton() {
        let psi = Vars::psi();
        let r = symmetric_reduce(&(&c([2, 0], 1) + &c([0, 2], 1))).unwrap();
        assert_eq!(r, MultiPoly::var(&psi, 0));
        let r = symmetric_reduce(&(&c([4, 0], 1) + &c([0, 4], 1))).unwrap();
        let expect = &MultiPoly::var(&psi, 0).pow(2) - &MultiPoly::var(&psi, 1).scale(&qi(2));
        assert_eq!(r, expect);
        assert_eq!(psi_to_c(&r).unwrap(), &c([4, 0], 1) + &c([0, 4], 1));
    }

    #[test]
    fn rejects_odd_and_asymmetric() {
        assert_eq!(
            symmetric_reduce(&c([1, 1], 1)),
            Err(SymbolicError::Parity("c1".into()))
        );
        assert_eq!(
            symmetric_reduce(&c([2, 0], 1)),
            Err(SymbolicError::Asymmetry)
        );
    }
}
