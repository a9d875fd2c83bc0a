//! Second-order differential operators in two variables with polynomial
//! matrix coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::matrix::PolyMatrix;
use super::poly::{MultiPoly, Vars};
use super::rational::Rational;
use super::SymbolicError;

/// Derivative multi-index `(n1, n2)` meaning `d^{n1+n2} / du^{n1} dv^{n2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivIndex(pub u8, pub u8);

impl DerivIndex {
    pub const ID: DerivIndex = DerivIndex(0, 0);
    pub const D1: DerivIndex = DerivIndex(1, 0);
    pub const D2: DerivIndex = DerivIndex(0, 1);
    pub const D11: DerivIndex = DerivIndex(2, 0);
    pub const D12: DerivIndex = DerivIndex(1, 1);
    pub const D22: DerivIndex = DerivIndex(0, 2);
    pub const ALL: [DerivIndex; 6] = [
        DerivIndex::ID,
        DerivIndex::D1,
        DerivIndex::D2,
        DerivIndex::D11,
        DerivIndex::D12,
        DerivIndex::D22,
    ];

    pub fn order(self) -> u8 {
        self.0 + self.1
    }

    pub fn describe(self, vars: &Vars) -> String {
        let names = vars.names();
        match (self.0, self.1) {
            (0, 0) => String::from("1"),
            (1, 0) => format!("d/d{}", names[0]),
            (0, 1) => format!("d/d{}", names[1]),
            (2, 0) => format!("d2/d{}2", names[0]),
            (1, 1) => format!("d2/d{}d{}", names[0], names[1]),
            (0, 2) => format!("d2/d{}2", names[1]),
            _ => format!("d^({},{})", self.0, self.1),
        }
    }

    fn apply(self, p: &MultiPoly) -> MultiPoly {
        let mut out = p.clone();
        for _ in 0..self.0 {
            out = out.derive(0);
        }
        for _ in 0..self.1 {
            out = out.derive(1);
        }
        out
    }

    fn from_pair(i: usize, k: usize) -> DerivIndex {
        match (i.min(k), i.max(k)) {
            (0, 0) => DerivIndex::D11,
            (0, 1) => DerivIndex::D12,
            _ => DerivIndex::D22,
        }
    }
}

/// Whether coefficient matrices multiply the differentiated function from
/// the left or from the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct MatrixDiffOp {
    vars: Vars,
    size: usize,
    side: Side,
    coeffs: BTreeMap<DerivIndex, PolyMatrix>,
}

impl MatrixDiffOp {
    pub fn new(vars: &Vars, size: usize, side: Side) -> Result<Self, SymbolicError> {
        if vars.arity() != 2 {
            return Err(SymbolicError::Arity {
                expected: 2,
                got: vars.arity(),
            });
        }
        Ok(MatrixDiffOp {
            vars: vars.clone(),
            size,
            side,
            coeffs: BTreeMap::new(),
        })
    }

    /// A 1x1 operator from scalar coefficients.
    pub fn scalar<I>(vars: &Vars, side: Side, coeffs: I) -> Result<Self, SymbolicError>
    where
        I: IntoIterator<Item = (DerivIndex, MultiPoly)>,
    {
        let mut op = MatrixDiffOp::new(vars, 1, side)?;
        for (idx, p) in coeffs {
            op = op.with(idx, PolyMatrix::from_entries(vars, 1, 1, alloc::vec![p])?)?;
        }
        Ok(op)
    }

    /// Adds `c` to the coefficient of `idx`.
    pub fn with(mut self, idx: DerivIndex, c: PolyMatrix) -> Result<Self, SymbolicError> {
        if idx.order() > 2 {
            return Err(SymbolicError::DimensionMismatch(format!(
                "derivative order {} exceeds two",
                idx.order()
            )));
        }
        if c.rows() != self.size || c.cols() != self.size {
            return Err(SymbolicError::DimensionMismatch(format!(
                "{}x{} coefficient for a size {} operator",
                c.rows(),
                c.cols(),
                self.size
            )));
        }
        if c.vars() != &self.vars {
            return Err(SymbolicError::VariableMismatch {
                left: self.vars.describe(),
                right: c.vars().describe(),
            });
        }
        let sum = match self.coeffs.remove(&idx) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(idx, sum);
        }
        Ok(self)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coeff(&self, idx: DerivIndex) -> PolyMatrix {
        self.coeffs
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(&self.vars, self.size, self.size))
    }

    /// Scalar coefficient of a 1x1 operator.
    pub fn scalar_coeff(&self, idx: DerivIndex) -> MultiPoly {
        self.coeff(idx).get(0, 0).clone()
    }

    pub fn add(&self, other: &MatrixDiffOp) -> Result<MatrixDiffOp, SymbolicError> {
        if self.side != other.side {
            return Err(SymbolicError::DimensionMismatch(
                "operators act on different sides".into(),
            ));
        }
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out = out.with(*idx, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MatrixDiffOp {
        let mut out = self.clone();
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (*k, v.scale(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// A scalar operator promoted to `p * Id_n` coefficients.
    pub fn tensor_identity(&self, n: usize) -> Result<MatrixDiffOp, SymbolicError> {
        if self.size != 1 {
            return Err(SymbolicError::DimensionMismatch(
                "only scalar operators can be promoted".into(),
            ));
        }
        let mut out = MatrixDiffOp::new(&self.vars, n, self.side)?;
        for (idx, c) in &self.coeffs {
            out = out.with(
                *idx,
                PolyMatrix::identity(&self.vars, n).scale_poly(c.get(0, 0)),
            )?;
        }
        Ok(out)
    }

    /// `sum_idx (d^idx F) C_idx` for right action, `C_idx d^idx F` for left.
    pub fn apply(&self, f: &PolyMatrix) -> Result<PolyMatrix, SymbolicError> {
        if f.vars() != &self.vars {
            return Err(SymbolicError::VariableMismatch {
                left: self.vars.describe(),
                right: f.vars().describe(),
            });
        }
        let fits = match self.side {
            Side::Right => f.cols() == self.size,
            Side::Left => f.rows() == self.size,
        };
        if !fits {
            return Err(SymbolicError::DimensionMismatch(format!(
                "{}x{} function for a size {} operator",
                f.rows(),
                f.cols(),
                self.size
            )));
        }
        let mut acc = PolyMatrix::zeros(&self.vars, f.rows(), f.cols());
        for (idx, c) in &self.coeffs {
            let df = f.map(|e| idx.apply(e));
            let term = match self.side {
                Side::Right => df.mul(c)?,
                Side::Left => c.mul(&df)?,
            };
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Rewrites the operator in new coordinates `y = A u + const`.
    ///
    /// `jac[j][i] = dy_j/du_i` and `old_in_new[i]` expresses `u_i` as a
    /// polynomial in the new variables.
    pub fn affine_transform(
        &self,
        jac: &[[Rational; 2]; 2],
        old_in_new: &[MultiPoly; 2],
    ) -> Result<MatrixDiffOp, SymbolicError> {
        let new_vars = old_in_new[0].vars().clone();
        let mut out = MatrixDiffOp::new(&new_vars, self.size, self.side)?;
        for (idx, c) in &self.coeffs {
            let c = c.substitute(old_in_new)?;
            match idx.order() {
                0 => out = out.with(*idx, c)?,
                1 => {
                    let i = if *idx == DerivIndex::D1 { 0 } else { 1 };
                    for (j, target) in [DerivIndex::D1, DerivIndex::D2].into_iter().enumerate() {
                        out = out.with(target, c.scale(&jac[j][i]))?;
                    }
                }
                _ => {
                    let (i, k) = match *idx {
                        DerivIndex::D11 => (0, 0),
                        DerivIndex::D12 => (0, 1),
                        _ => (1, 1),
                    };
                    for j in 0..2 {
                        for l in 0..2 {
                            let f = &jac[j][i] * &jac[l][k];
                            out = out.with(DerivIndex::from_pair(j, l), c.scale(&f))?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Derivative indices whose coefficients differ.
    pub fn differing_coeffs(&self, other: &MatrixDiffOp) -> Vec<DerivIndex> {
        DerivIndex::ALL
            .into_iter()
            .filter(|&idx| self.coeff(idx) != other.coeff(idx))
            .collect()
    }
}

impl PartialEq for MatrixDiffOp {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.size == other.size
            && self.side == other.side
            && self.coeffs == other.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::{q, qi};

    #[test]
    fn identity_coefficient_is_identity() {
        let v = Vars::psi();
        let op = MatrixDiffOp::new(&v, 2, Side::Right)
            .unwrap()
            .with(DerivIndex::ID, PolyMatrix::identity(&v, 2))
            .unwrap();
        let f = PolyMatrix::from_fn(&v, 2, 2, |i, j| {
            MultiPoly::monomial(&v, alloc::vec![i as u32, j as u32], qi(1))
        });
        assert_eq!(op.apply(&f).unwrap(), f);
    }

    #[test]
    fn first_derivative_of_square() {
        let v = Vars::psi();
        let op =
            MatrixDiffOp::scalar(&v, Side::Right, [(DerivIndex::D1, MultiPoly::one(&v))]).unwrap();
        let f =
            PolyMatrix::from_entries(&v, 1, 1, alloc::vec![MultiPoly::var(&v, 0).pow(2)]).unwrap();
        let out = op.apply(&f).unwrap();
        assert_eq!(out.get(0, 0), &MultiPoly::var(&v, 0).scale(&qi(2)));
    }

    #[test]
    fn chain_rule_under_affine_change() {
        // y = 2u, so d/du = 2 d/dy and d2/du2 = 4 d2/dy2
        let u = Vars::new(&["u1", "u2"]);
        let y = Vars::new(&["y1", "y2"]);
        let op = MatrixDiffOp::scalar(
            &u,
            Side::Right,
            [
                (DerivIndex::D1, MultiPoly::var(&u, 0)),
                (DerivIndex::D11, MultiPoly::one(&u)),
            ],
        )
        .unwrap();
        let jac = [[qi(2), qi(0)], [qi(0), qi(1)]];
        let back = [MultiPoly::var(&y, 0).scale(&q(1, 2)), MultiPoly::var(&y, 1)];
        let t = op.affine_transform(&jac, &back).unwrap();
        assert_eq!(t.scalar_coeff(DerivIndex::D1), MultiPoly::var(&y, 0));
        assert_eq!(
            t.scalar_coeff(DerivIndex::D11),
            MultiPoly::constant(&y, qi(4))
        );
    }
}
