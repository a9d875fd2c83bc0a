//! Polynomial matrices and dense rational matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::{MultiPoly, Vars};
use super::rational::Rational;
use super::SymbolicError;

/// Row-major matrix of polynomials over one variable tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        PolyMatrix::from_fn(vars, n, n, |i, j| {
            if i == j {
                MultiPoly::one(vars)
            } else {
                MultiPoly::zero(vars)
            }
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> MultiPoly>(
        vars: &Vars,
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.vars() == vars, "entry variables differ");
                entries.push(e);
            }
        }
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_entries(
        vars: &Vars,
        rows: usize,
        cols: usize,
        entries: Vec<MultiPoly>,
    ) -> Result<Self, SymbolicError> {
        if entries.len() != rows * cols {
            return Err(SymbolicError::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        for e in &entries {
            if e.vars() != vars {
                return Err(SymbolicError::VariableMismatch {
                    left: vars.describe(),
                    right: e.vars().describe(),
                });
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_constants(vars: &Vars, m: &QMatrix) -> Self {
        PolyMatrix::from_fn(vars, m.rows(), m.cols(), |i, j| {
            MultiPoly::constant(vars, m.get(i, j).clone())
        })
    }

    /// The anti-diagonal flip `J_{ij} = [i + j = n - 1]`.
    pub fn flip(vars: &Vars, n: usize) -> Self {
        PolyMatrix::from_fn(vars, n, n, |i, j| {
            if i + j + 1 == n {
                MultiPoly::one(vars)
            } else {
                MultiPoly::zero(vars)
            }
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert!(p.vars() == &self.vars, "entry variables differ");
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn check_same_shape(&self, other: &PolyMatrix) -> Result<(), SymbolicError> {
        if self.vars != other.vars {
            return Err(SymbolicError::VariableMismatch {
                left: self.vars.describe(),
                right: other.vars.describe(),
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(SymbolicError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, SymbolicError> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        PolyMatrix::from_entries(&self.vars, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, SymbolicError> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        PolyMatrix::from_entries(&self.vars, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, SymbolicError> {
        if self.vars != other.vars {
            return Err(SymbolicError::VariableMismatch {
                left: self.vars.describe(),
                right: other.vars.describe(),
            });
        }
        if self.cols != other.rows {
            return Err(SymbolicError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix::from_fn(
            &self.vars,
            self.rows,
            other.cols,
            |i, j| {
                let mut acc = MultiPoly::zero(&self.vars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            },
        ))
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> PolyMatrix {
        self.map(|e| e * p)
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|e| e.scale(c))
    }

    pub fn map<F: Fn(&MultiPoly) -> MultiPoly>(&self, f: F) -> PolyMatrix {
        let entries: Vec<MultiPoly> = self.entries.iter().map(f).collect();
        let vars = entries
            .first()
            .map(|e| e.vars().clone())
            .unwrap_or_else(|| self.vars.clone());
        PolyMatrix {
            vars,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn try_map<F>(&self, f: F) -> Result<PolyMatrix, SymbolicError>
    where
        F: Fn(&MultiPoly) -> Result<MultiPoly, SymbolicError>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        let vars = entries
            .first()
            .map(|e| e.vars().clone())
            .unwrap_or_else(|| self.vars.clone());
        PolyMatrix::from_entries(&vars, self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn derive(&self, idx: usize) -> PolyMatrix {
        self.map(|e| e.derive(idx))
    }

    pub fn substitute(&self, images: &[MultiPoly]) -> Result<PolyMatrix, SymbolicError> {
        self.try_map(|e| e.substitute(images))
    }

    pub fn permute_vars(&self, perm: &[usize]) -> PolyMatrix {
        self.map(|e| e.permute_vars(perm))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<QMatrix, SymbolicError> {
        let data = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QMatrix::from_vec(self.rows, self.cols, data))
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Vec<f64> {
        self.entries.iter().map(|e| e.evaluate_f64(point)).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination with exact
    /// polynomial division.
    pub fn det(&self) -> Result<MultiPoly, SymbolicError> {
        if self.rows != self.cols {
            return Err(SymbolicError::DimensionMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one(&self.vars));
        }
        let mut a: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = MultiPoly::one(&self.vars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(MultiPoly::zero(&self.vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.div_exact(&prev).ok_or(SymbolicError::NonPolynomial)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        QMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == QMatrix::identity(self.rows)
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = Rational::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Leading principal minors, in order of size.
    pub fn leading_minors(&self) -> Vec<Rational> {
        (1..=self.rows)
            .map(|k| QMatrix::from_fn(k, k, |i, j| self.get(i, j).clone()).det())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational::qi;

    #[test]
    fn bareiss_matches_cofactor() {
        let v = Vars::psi();
        let p1 = MultiPoly::var(&v, 0);
        let p2 = MultiPoly::var(&v, 1);
        let two = MultiPoly::constant(&v, qi(2));
        let m = PolyMatrix::from_entries(
            &v,
            2,
            2,
            vec![p1.clone(), &two * &p2, &two * &p2, &p1 * &p2],
        )
        .unwrap();
        let expect = &(&p1.pow(2) * &p2) - &p2.pow(2).scale(&qi(4));
        assert_eq!(m.det().unwrap(), expect);
    }

    #[test]
    fn rational_inverse_and_rank() {
        let a = QMatrix::from_vec(2, 2, vec![qi(1), qi(2), qi(3), qi(4)]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), qi(-2));
        let s = QMatrix::from_vec(2, 2, vec![qi(1), qi(2), qi(2), qi(4)]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn shape_errors() {
        let v = Vars::c();
        let a = PolyMatrix::zeros(&v, 2, 3);
        assert!(matches!(
            a.mul(&a),
            Err(SymbolicError::DimensionMismatch(_))
        ));
        assert!(PolyMatrix::from_entries(&v, 2, 2, vec![]).is_err());
    }
}
