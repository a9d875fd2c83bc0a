//! The three coordinate systems on the torus quotient.
//!
//! * `(c1, c2) = (cos t1, cos t2)`
//! * `psi1 = c1^2 + c2^2`, `psi2 = c1^2 c2^2`
//! * `x1 = 2 psi1 - 2`, `x2 = 4 psi2 - 2 psi1 + 1`, equivalently
//!   `x1 = cos 2t1 + cos 2t2`, `x2 = cos 2t1 cos 2t2`

use crate::symbolic::rational::{q, qi, Rational};
use crate::symbolic::{MultiPoly, PolyMatrix, SymbolicError, Vars};

pub fn psi_in_c() -> [MultiPoly; 2] {
    let c = Vars::c();
    let c1 = MultiPoly::var(&c, 0).pow(2);
    let c2 = MultiPoly::var(&c, 1).pow(2);
    [&c1 + &c2, &c1 * &c2]
}

pub fn psi_in_x() -> [MultiPoly; 2] {
    let x = Vars::x();
    let x1 = MultiPoly::var(&x, 0);
    let x2 = MultiPoly::var(&x, 1);
    let one = MultiPoly::one(&x);
    [
        (&x1 + &one.scale(&qi(2))).scale(&q(1, 2)),
        (&(&x1 + &x2) + &one).scale(&q(1, 4)),
    ]
}

pub fn x_in_psi() -> [MultiPoly; 2] {
    let psi = Vars::psi();
    let p1 = MultiPoly::var(&psi, 0);
    let p2 = MultiPoly::var(&psi, 1);
    let one = MultiPoly::one(&psi);
    [
        &p1.scale(&qi(2)) - &one.scale(&qi(2)),
        &(&p2.scale(&qi(4)) - &p1.scale(&qi(2))) + &one,
    ]
}

pub fn x_in_c() -> [MultiPoly; 2] {
    let [a, b] = x_in_psi();
    let psi = psi_in_c();
    [
        a.substitute(&psi).expect("arity 2"),
        b.substitute(&psi).expect("arity 2"),
    ]
}

/// `J[j][i] = dx_j / dpsi_i`.
pub fn jacobian_x_psi() -> [[Rational; 2]; 2] {
    [[qi(2), qi(0)], [qi(-2), qi(4)]]
}

pub fn psi_to_x(p: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
    p.substitute(&psi_in_x())
}

pub fn x_to_psi(p: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
    p.substitute(&x_in_psi())
}

pub fn psi_to_c(p: &MultiPoly) -> Result<MultiPoly, SymbolicError> {
    p.substitute(&psi_in_c())
}

pub fn matrix_psi_to_x(m: &PolyMatrix) -> Result<PolyMatrix, SymbolicError> {
    m.substitute(&psi_in_x())
}

pub fn matrix_psi_to_c(m: &PolyMatrix) -> Result<PolyMatrix, SymbolicError> {
    m.substitute(&psi_in_c())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let psi = Vars::psi();
        for k in 0..2 {
            let v = MultiPoly::var(&psi, k);
            assert_eq!(x_to_psi(&psi_to_x(&v).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn double_angle_form() {
        // x1 = cos 2t1 + cos 2t2, x2 = cos 2t1 cos 2t2 with cos 2t = 2c^2 - 1
        let c = Vars::c();
        let one = MultiPoly::one(&c);
        let d1 = &MultiPoly::var(&c, 0).pow(2).scale(&qi(2)) - &one;
        let d2 = &MultiPoly::var(&c, 1).pow(2).scale(&qi(2)) - &one;
        let [x1, x2] = x_in_c();
        assert_eq!(x1, &d1 + &d2);
        assert_eq!(x2, &d1 * &d2);
    }
}
