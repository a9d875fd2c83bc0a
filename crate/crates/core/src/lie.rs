//! Weight-lattice data for `SU(m+2)` and the labels of the spherical
//! functions of K-type `mu = a w1 + b w2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::symbolic::rational::{q, qi, Rational};
use crate::Error;

/// `(m, a, b)` with `m > 2` and `a >= 0`.
///
/// `b >= 0` is the canonical regime. `b <= -a` is the dual regime, produced
/// by [`PairParams::dualize`]; the strip `-a < b < 0` is not covered by the
/// construction and is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairParams {
    pub m: i64,
    pub a: i64,
    pub b: i64,
}

impl PairParams {
    pub fn new(m: i64, a: i64, b: i64) -> Result<Self, Error> {
        if m <= 2 {
            return Err(Error::InvalidParams(format!("m = {} must exceed 2", m)));
        }
        if a < 0 {
            return Err(Error::InvalidParams(format!(
                "a = {} must be non-negative",
                a
            )));
        }
        if -a < b && b < 0 {
            return Err(Error::InvalidParams(format!(
                "b = {} lies in -a < b < 0; negative b is only reachable through duality, \
                 which requires b <= -a",
                b
            )));
        }
        Ok(PairParams { m, a, b })
    }

    pub fn is_canonical(&self) -> bool {
        self.b >= 0
    }

    /// Requires the canonical regime; used by constructions that are only
    /// defined there.
    pub fn require_canonical(&self) -> Result<(), Error> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "b = {} < 0: construct the dual family from ({}, {}, {})",
                self.b,
                self.m,
                self.a,
                -self.a - self.b
            )))
        }
    }

    /// `(m, a, -a-b)`; the bottom index map is `i -> a - i`.
    pub fn dualize(&self) -> PairParams {
        PairParams {
            m: self.m,
            a: self.a,
            b: -self.a - self.b,
        }
    }

    pub fn dual_index(&self, i: i64) -> i64 {
        self.a - i
    }

    pub fn size(&self) -> usize {
        (self.a + 1) as usize
    }

    pub fn tag(&self) -> alloc::string::String {
        format!("m={},a={},b={}", self.m, self.a, self.b)
    }
}

/// Integer vector in the basis `w1, ..., w_{m+1}` of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub omega: Vec<i64>,
}

impl Weight {
    pub fn zero(m: i64) -> Self {
        Weight {
            omega: vec![0; (m + 1) as usize],
        }
    }

    /// `w_i`, with `w_0 = w_{m+2} = 0`.
    pub fn fundamental(m: i64, i: i64) -> Self {
        let mut w = Weight::zero(m);
        if (1..=m + 1).contains(&i) {
            w.omega[(i - 1) as usize] = 1;
        }
        w
    }

    /// Simple root `alpha_i = -w_{i-1} + 2 w_i - w_{i+1}`.
    pub fn simple_root(m: i64, i: i64) -> Self {
        Weight::fundamental(m, i).scale(2)
            - Weight::fundamental(m, i - 1)
            - Weight::fundamental(m, i + 1)
    }

    /// `rho = sum of all w_i`.
    pub fn rho(m: i64) -> Self {
        Weight {
            omega: vec![1; (m + 1) as usize],
        }
    }

    /// Spherical generator `lambda1 = w1 + w_{m+1}`.
    pub fn lambda1(m: i64) -> Self {
        Weight::fundamental(m, 1) + Weight::fundamental(m, m + 1)
    }

    /// Spherical generator `lambda2 = w2 + w_m`.
    pub fn lambda2(m: i64) -> Self {
        Weight::fundamental(m, 2) + Weight::fundamental(m, m)
    }

    pub fn rank(&self) -> i64 {
        self.omega.len() as i64
    }

    pub fn m(&self) -> i64 {
        self.rank() - 1
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            omega: self.omega.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.omega.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.omega.iter().all(|&x| x == 0)
    }

    /// Image under the diagram automorphism `w_i -> w_{m+2-i}`.
    pub fn dual(&self) -> Weight {
        let mut omega = self.omega.clone();
        omega.reverse();
        Weight { omega }
    }

    /// Partition coordinates `l_i = sum_{k >= i} a_k`, length `m + 2` with
    /// last entry zero.
    pub fn partition(&self) -> Vec<i64> {
        let n = self.omega.len();
        let mut out = vec![0; n + 1];
        for i in (0..n).rev() {
            out[i] = out[i + 1] + self.omega[i];
        }
        out
    }

    /// Coefficients in the simple-root basis, generally rational.
    pub fn alpha_coords(&self) -> Vec<Rational> {
        // inverse Cartan matrix of A_n: min(i,j)(n+1-max(i,j))/(n+1)
        let n = self.omega.len() as i64;
        (1..=n)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j0, &w) in self.omega.iter().enumerate() {
                    let j = j0 as i64 + 1;
                    if w != 0 {
                        acc += q(i.min(j) * (n + 1 - i.max(j)) * w, n + 1);
                    }
                }
                acc
            })
            .collect()
    }

    fn check_rank(&self, other: &Weight) {
        assert_eq!(
            self.omega.len(),
            other.omega.len(),
            "weights of different rank"
        );
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        self.check_rank(&rhs);
        Weight {
            omega: self
                .omega
                .iter()
                .zip(&rhs.omega)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        self.check_rank(&rhs);
        Weight {
            omega: self
                .omega
                .iter()
                .zip(&rhs.omega)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

/// `w1 <= w2` in the dominance order: `w2 - w1` is a non-negative integer
/// combination of simple roots.
pub fn dominance_leq(w1: &Weight, w2: &Weight) -> bool {
    (w2.clone() - w1.clone())
        .alpha_coords()
        .iter()
        .all(|c| c.is_integer() && !c.is_negative())
}

/// Label `lambda = nu_i + d1 lambda1 + d2 lambda2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MsfLabel {
    pub i: i64,
    pub d1: i64,
    pub d2: i64,
}

impl MsfLabel {
    pub fn new(i: i64, d1: i64, d2: i64) -> Self {
        MsfLabel { i, d1, d2 }
    }

    pub fn is_valid(&self, params: &PairParams) -> bool {
        (0..=params.a).contains(&self.i) && self.d1 >= 0 && self.d2 >= 0
    }

    pub fn degree(&self) -> i64 {
        self.d1 + self.d2
    }
}

/// `nu_i = (a-i) w1 + (i+b) w2 + i w_{m+1}`. In the dual regime the bottom
/// is the dual of the canonical bottom with index `a - i`.
pub fn bottom_weight(params: &PairParams, i: i64) -> Result<Weight, Error> {
    if !(0..=params.a).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "bottom index {} not in 0..={}",
            i, params.a
        )));
    }
    let m = params.m;
    if params.is_canonical() {
        Ok(Weight::fundamental(m, 1).scale(params.a - i)
            + Weight::fundamental(m, 2).scale(i + params.b)
            + Weight::fundamental(m, m + 1).scale(i))
    } else {
        Ok(bottom_weight(&params.dualize(), params.a - i)?.dual())
    }
}

pub fn label_weight(params: &PairParams, label: &MsfLabel) -> Result<Weight, Error> {
    if label.d1 < 0 || label.d2 < 0 {
        return Err(Error::IndexOutOfRange(format!(
            "negative degree in {:?}",
            label
        )));
    }
    let m = params.m;
    Ok(bottom_weight(params, label.i)?
        + Weight::lambda1(m).scale(label.d1)
        + Weight::lambda2(m).scale(label.d2))
}

/// Closed form of the Casimir eigenvalue of `nu_i + d1 lambda1 + d2 lambda2`.
///
/// In the dual regime the label is mapped back through `i -> a - i`; the
/// dual representation has the same eigenvalue.
pub fn casimir_eigenvalue(params: &PairParams, label: &MsfLabel) -> Rational {
    if !params.is_canonical() {
        let back = MsfLabel::new(params.a - label.i, label.d1, label.d2);
        return casimir_eigenvalue(&params.dualize(), &back);
    }
    let (m, a, b) = (params.m, params.a, params.b);
    let MsfLabel { i, d1, d2 } = *label;
    let base = qi(2 * i * i + 2 * i * (b + m) + (m + 1) * a + 2 * m * b)
        + q((m + 1) * a * a + 2 * m * b * (a + b), m + 2);
    base + qi(2 * d1 * d1 + 4 * d1 * d2 + 4 * d2 * d2)
        + qi(2 * d1 * (a + b + i + m + 1))
        + qi(2 * d2 * (a + 2 * b + 2 * i + 2 * m))
}

fn trace_form(u: &[i64], v: &[i64]) -> Rational {
    let n = u.len() as i64;
    let dot: i64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
    let su: i64 = u.iter().sum();
    let sv: i64 = v.iter().sum();
    qi(dot) - q(su * sv, n)
}

/// `<lambda, lambda> + 2 <lambda, rho>` computed in partition coordinates
/// with the trace form `<e_i, e_j> = delta_ij - 1/(m+2)`.
pub fn casimir_eigenvalue_ip(w: &Weight) -> Rational {
    let l = w.partition();
    let rho = Weight::rho(w.m()).partition();
    trace_form(&l, &l) + trace_form(&l, &rho) * qi(2)
}

/// Weyl dimension formula for `A_{m+1}`.
pub fn weyl_dim(w: &Weight) -> Result<BigInt, Error> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(format!("{:?}", w.omega)));
    }
    let l = w.partition();
    let n = l.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            num *= BigInt::from(l[i] - l[j] + gap);
            den *= BigInt::from(gap);
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `V_{w_i} (x) V_{w_j} = sum_r V_{w_{i-r} + w_{j+r}}` for `i <= j`.
pub fn tensor_fund_decomp(m: i64, i: i64, j: i64) -> Result<Vec<Weight>, Error> {
    if !(1 <= i && i <= j && j <= m + 1) {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= {} <= {} <= {}",
            i,
            j,
            m + 1
        )));
    }
    Ok((0..=i.min(m + 2 - j))
        .map(|r| Weight::fundamental(m, i - r) + Weight::fundamental(m, j + r))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, a: i64, b: i64) -> PairParams {
        PairParams::new(m, a, b).unwrap()
    }

    #[test]
    fn bottom_weights() {
        let pp = p(3, 2, 1);
        assert_eq!(bottom_weight(&pp, 0).unwrap().omega, vec![2, 1, 0, 0]);
        assert_eq!(bottom_weight(&pp, 2).unwrap().omega, vec![0, 3, 0, 2]);
        assert!(bottom_weight(&p(3, 0, 0), 0).unwrap().is_zero());
        assert!(bottom_weight(&pp, 3).is_err());
    }

    #[test]
    fn lambda2_dominates_lambda1() {
        for m in 3..7 {
            let diff = Weight::lambda2(m) - Weight::lambda1(m);
            let coords = diff.alpha_coords();
            for (k, c) in coords.iter().enumerate() {
                let expect = if k == 0 || k as i64 == m { 0 } else { 1 };
                assert_eq!(*c, qi(expect));
            }
            assert!(dominance_leq(&Weight::lambda1(m), &Weight::lambda2(m)));
            assert!(!dominance_leq(&Weight::lambda2(m), &Weight::lambda1(m)));
        }
    }

    #[test]
    fn weight_outside_root_lattice_is_incomparable() {
        let w1 = Weight::fundamental(3, 1);
        assert!(!dominance_leq(&Weight::zero(3), &w1));
        assert!(dominance_leq(&w1, &w1));
    }

    #[test]
    fn eigenvalues_of_generators() {
        for m in 3..7 {
            let pp = p(m, 0, 0);
            assert_eq!(
                casimir_eigenvalue(&pp, &MsfLabel::new(0, 1, 0)),
                qi(2 * m + 4)
            );
            assert_eq!(
                casimir_eigenvalue(&pp, &MsfLabel::new(0, 0, 1)),
                qi(4 * m + 4)
            );
            assert_eq!(casimir_eigenvalue(&pp, &MsfLabel::new(0, 0, 0)), qi(0));
            assert_eq!(casimir_eigenvalue_ip(&Weight::lambda1(m)), qi(2 * m + 4));
            assert_eq!(casimir_eigenvalue_ip(&Weight::zero(m)), qi(0));
        }
    }

    #[test]
    fn classical_dimensions() {
        for m in 3..7 {
            assert_eq!(
                weyl_dim(&Weight::fundamental(m, 1)).unwrap(),
                BigInt::from(m + 2)
            );
            assert_eq!(
                weyl_dim(&Weight::lambda1(m)).unwrap(),
                BigInt::from((m + 2) * (m + 2) - 1)
            );
            assert_eq!(
                weyl_dim(&Weight::fundamental(m, 2)).unwrap(),
                BigInt::from((m + 2) * (m + 1) / 2)
            );
        }
        assert!(weyl_dim(&Weight::simple_root(3, 1)).is_err());
    }

    #[test]
    fn minuscule_products() {
        let m = 4;
        let d = tensor_fund_decomp(m, 1, m + 1).unwrap();
        assert_eq!(d, vec![Weight::lambda1(m), Weight::zero(m)]);
        let d = tensor_fund_decomp(m, 2, m).unwrap();
        assert_eq!(
            d,
            vec![Weight::lambda2(m), Weight::lambda1(m), Weight::zero(m)]
        );
    }

    #[test]
    fn regimes() {
        assert!(PairParams::new(3, 2, -1).is_err());
        assert!(PairParams::new(2, 0, 0).is_err());
        let d = p(3, 2, 1).dualize();
        assert_eq!(d, p(3, 2, -3));
        assert_eq!(d.dualize(), p(3, 2, 1));
        assert_eq!(p(3, 0, 0).dualize(), p(3, 0, 0));
        // dual bottom: nu_i(mu*) = (a-i) w1 + (a+b-i) w_m + i w_{m+1}
        let w = bottom_weight(&d, 0).unwrap();
        assert_eq!(w.omega, vec![2, 0, 3, 0]);
    }
}
