//! The radial part of the Casimir operator acting on `End_M`-valued
//! functions on the torus, its scalar form in `(psi1, psi2)`, the
//! conjugation matrices `C1`, `C2`, and the operator family in `x`-coordinates.
//!
//! The radial operator is evaluated over the rational-function field in
//! `(c1, c2)`: every summand is written over the common denominator
//! `D = 2 c1^2 c2^2 (c2^2 - c1^2)^2` and the sum is divided exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::coords;
use crate::leading::q0_matrix;
use crate::lie::{casimir_eigenvalue, MsfLabel, PairParams};
use crate::report::Report;
use crate::symbolic::rational::{q, qi, Rational};
use crate::symbolic::{
    symmetric_reduce, DerivIndex, MatrixDiffOp, MultiPoly, PolyMatrix, QMatrix, RationalFn, Side,
    Vars,
};
use crate::Error;

/// Component `k` is the scalar function on the M-type `sigma_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MTypeVectorFn {
    pub params: PairParams,
    pub components: Vec<MultiPoly>,
}

impl MTypeVectorFn {
    pub fn new(params: &PairParams, components: Vec<MultiPoly>) -> Result<Self, Error> {
        if components.len() != params.size() {
            return Err(Error::Symbolic(
                crate::symbolic::SymbolicError::DimensionMismatch(format!(
                    "{} components for a = {}",
                    components.len(),
                    params.a
                )),
            ));
        }
        let c = Vars::c();
        if let Some(bad) = components.iter().find(|p| p.vars() != &c) {
            return Err(Error::Symbolic(
                crate::symbolic::SymbolicError::VariableMismatch {
                    left: c.describe(),
                    right: bad.vars().describe(),
                },
            ));
        }
        Ok(MTypeVectorFn {
            params: *params,
            components,
        })
    }

    pub fn zero(params: &PairParams) -> Self {
        MTypeVectorFn {
            params: *params,
            components: vec![MultiPoly::zero(&Vars::c()); params.size()],
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, f: &MultiPoly) -> Self {
        self.map(|p| p * f)
    }

    pub fn add(&self, other: &MTypeVectorFn) -> Self {
        MTypeVectorFn {
            params: self.params,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &MTypeVectorFn) -> Self {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    fn map<F: Fn(&MultiPoly) -> MultiPoly>(&self, f: F) -> Self {
        MTypeVectorFn {
            params: self.params,
            components: self.components.iter().map(f).collect(),
        }
    }
}

/// The five summands of the radial operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// Scalar action of the Casimir of the centraliser.
    OmegaM,
    /// `-1/2 (d^2/dt1^2 + d^2/dt2^2)`.
    Flat,
    Short,
    Middle,
    Long,
}

impl Piece {
    pub const ALL: [Piece; 5] = [
        Piece::OmegaM,
        Piece::Flat,
        Piece::Short,
        Piece::Middle,
        Piece::Long,
    ];
}

pub struct RadialCasimir {
    params: PairParams,
    c1: MultiPoly,
    c2: MultiPoly,
    s1sq: MultiPoly,
    s2sq: MultiPoly,
    delta: MultiPoly,
    den: MultiPoly,
    cc: MultiPoly,
    cross: MultiPoly,
}

impl RadialCasimir {
    pub fn new(params: &PairParams) -> Result<Self, Error> {
        params.require_canonical()?;
        let v = Vars::c();
        let one = MultiPoly::one(&v);
        let c1 = MultiPoly::var(&v, 0);
        let c2 = MultiPoly::var(&v, 1);
        let s1sq = &one - &c1.pow(2);
        let s2sq = &one - &c2.pow(2);
        let delta = &c2.pow(2) - &c1.pow(2);
        let cc = &c1.pow(2) * &c2.pow(2);
        let den = (&cc * &delta.pow(2)).scale(&qi(2));
        // s1^2 c2^2 + c1^2 s2^2
        let cross = &(&s1sq * &c2.pow(2)) + &(&c1.pow(2) * &s2sq);
        Ok(RadialCasimir {
            params: *params,
            c1,
            c2,
            s1sq,
            s2sq,
            delta,
            den,
            cc,
            cross,
        })
    }

    pub fn params(&self) -> &PairParams {
        &self.params
    }

    /// The common denominator `D`.
    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    /// Scalar by which the centraliser Casimir acts on `sigma_k`.
    pub fn omega_m(&self, k: i64) -> Rational {
        let PairParams { m, a, b } = self.params;
        let u = a + b - k;
        let w = b + k;
        q(m * u * u - 4 * u * w + m * w * w, 2 * (m + 2))
    }

    /// Numerator over `D` of one summand, component by component.
    pub fn piece_numerators(
        &self,
        piece: Piece,
        f: &MTypeVectorFn,
    ) -> Result<Vec<MultiPoly>, Error> {
        let n = self.params.size();
        if f.components.len() != n {
            return Err(Error::Symbolic(
                crate::symbolic::SymbolicError::DimensionMismatch(format!(
                    "{} components, expected {}",
                    f.components.len(),
                    n
                )),
            ));
        }
        let PairParams { m, a, b } = self.params;
        let zero = MultiPoly::zero(&Vars::c());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let g = &f.components[k];
            let g1 = g.derive(0);
            let g2 = g.derive(1);
            let ki = k as i64;
            let num = match piece {
                Piece::OmegaM => (g * &self.den).scale(&self.omega_m(ki)),
                Piece::Flat => {
                    let lap = &(&(&self.s1sq * &g1.derive(0)) - &(&self.c1 * &g1))
                        + &(&(&self.s2sq * &g2.derive(1)) - &(&self.c2 * &g2));
                    -&(&(&self.cc * &self.delta.pow(2)) * &lap)
                }
                Piece::Short => {
                    let first = &(&self.c1 * &g1) + &(&self.c2 * &g2);
                    (&self.den * &first).scale(&qi(m - 2))
                }
                Piece::Middle => {
                    let first =
                        &(&(&self.s1sq * &self.c1) * &g1) - &(&(&self.s2sq * &self.c2) * &g2);
                    let first = (&(&self.cc * &self.delta) * &first).scale(&qi(4));
                    let up = if k + 1 < n {
                        &f.components[k + 1]
                    } else {
                        &zero
                    };
                    let down = if k > 0 { &f.components[k - 1] } else { &zero };
                    let coupling =
                        &up.scale(&qi((ki + 1) * (a - ki))) + &down.scale(&qi(ki * (a - ki + 1)));
                    let c1c2 = &self.c1 * &self.c2;
                    let ss = (&self.s1sq * &self.s2sq).scale(&qi(2));
                    let off = (&(&c1c2.pow(3) * &(&self.cross + &ss)) * &coupling).scale(&qi(-4));
                    let diag_coef = qi((ki + 1) * (a - ki) + ki * (a - ki + 1));
                    let diag = (&(&self.cc * &self.cross) * g).scale(&(qi(4) * diag_coef));
                    &(&first + &off) + &diag
                }
                Piece::Long => {
                    let d2 = self.delta.pow(2);
                    let one = MultiPoly::one(&Vars::c());
                    let t1 = &(&(&self.c1 * &self.c2.pow(2)) * &d2)
                        * &(&(&self.c1.pow(2).scale(&qi(2)) - &one) * &g1);
                    let t2 = &(&(&self.c1.pow(2) * &self.c2) * &d2)
                        * &(&(&self.c2.pow(2).scale(&qi(2)) - &one) * &g2);
                    let u = a + b - ki;
                    let w = b + ki;
                    let t3 = (&(&self.c2.pow(2) * &d2) * g).scale(&qi(u * u));
                    let t4 = (&(&self.c1.pow(2) * &d2) * g).scale(&qi(w * w));
                    &(&t1 + &t2) + &(&t3 + &t4)
                }
            };
            out.push(num);
        }
        Ok(out)
    }

    /// One summand as rational functions.
    pub fn apply_piece(&self, piece: Piece, f: &MTypeVectorFn) -> Result<Vec<RationalFn>, Error> {
        self.piece_numerators(piece, f)?
            .into_iter()
            .map(|n| RationalFn::new(n, self.den.clone()).map_err(Error::from))
            .collect()
    }

    /// The full operator. Fails with `NonPolynomialResidue` if a component
    /// is not a polynomial.
    pub fn apply(&self, f: &MTypeVectorFn) -> Result<MTypeVectorFn, Error> {
        let mut total: Vec<MultiPoly> = vec![MultiPoly::zero(&Vars::c()); self.params.size()];
        for piece in Piece::ALL {
            for (t, n) in total.iter_mut().zip(self.piece_numerators(piece, f)?) {
                *t = &*t + &n;
            }
        }
        let components = total
            .into_iter()
            .enumerate()
            .map(|(k, n)| {
                n.div_exact(&self.den)
                    .ok_or(Error::NonPolynomialResidue { component: k })
            })
            .collect::<Result<Vec<_>, _>>()?;
        // odd powers of the sines never enter, so parity is preserved
        Ok(MTypeVectorFn {
            params: self.params,
            components,
        })
    }
}

/// `Q_{nu_i}` as an M-type vector: row `i` of `Q0`.
pub fn q_bottom(params: &PairParams, i: i64) -> Result<MTypeVectorFn, Error> {
    let q0 = q0_matrix(params)?;
    if !(0..=params.a).contains(&i) {
        return Err(Error::IndexOutOfRange(format!("bottom index {}", i)));
    }
    let comps = (0..params.size())
        .map(|k| q0.get(i as usize, k).clone())
        .collect();
    MTypeVectorFn::new(params, comps)
}

/// `Q_lambda = psi1^{d1} psi2^{d2} Q_{nu_i}` for `lambda = nu_i + d1 lambda1 + d2 lambda2`.
pub fn q_label(params: &PairParams, label: &MsfLabel) -> Result<MTypeVectorFn, Error> {
    if !label.is_valid(params) {
        return Err(Error::IndexOutOfRange(format!("{:?}", label)));
    }
    let [p1, p2] = coords::psi_in_c();
    let f = &p1.pow(label.d1 as u32) * &p2.pow(label.d2 as u32);
    Ok(q_bottom(params, label.i)?.scale_poly(&f))
}

/// `R Q_{nu_i} = c_{nu_i} Q_{nu_i} - 2i(b+i) Q_{nu_{i-1}}` for every `i`.
pub fn bottom_lowering_check(params: &PairParams) -> Result<Report, Error> {
    let op = RadialCasimir::new(params)?;
    let mut r = Report::new();
    for i in 0..=params.a {
        let lhs = op.apply(&q_bottom(params, i)?)?;
        let mut rhs =
            q_bottom(params, i)?.scale(&casimir_eigenvalue(params, &MsfLabel::new(i, 0, 0)));
        if i > 0 {
            rhs = rhs.sub(&q_bottom(params, i - 1)?.scale(&qi(2 * i * (params.b + i))));
        }
        r.check(
            "casimir",
            &params.tag(),
            &format!("bottom lowering identity at i={}", i),
            lhs == rhs,
            || residual(&lhs.sub(&rhs)),
        );
    }
    Ok(r)
}

fn residual(v: &MTypeVectorFn) -> String {
    v.components
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("k={}: {}", k, p))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The seven lowering moves of `R Q_lambda` with their coefficients, as
/// derived from the Leibniz rule for `R` on `f(psi) Q_{nu_i}`. Moves whose
/// target is not a valid label carry coefficient zero.
pub fn lowering_moves(params: &PairParams, label: &MsfLabel) -> [(MsfLabel, Rational); 7] {
    let PairParams { a, b, .. } = *params;
    let MsfLabel { i, d1, d2 } = *label;
    [
        (
            MsfLabel::new(i, d1 - 1, d2),
            qi(-2 * d1 * (d1 + 4 * d2 + 3) - 2 * d1 * (a + 2 * b + 2 * i)),
        ),
        (MsfLabel::new(i, d1 - 2, d2 + 1), qi(-4 * d1 * (d1 - 1))),
        (
            MsfLabel::new(i, d1 + 1, d2 - 1),
            qi(-2 * d2 * d2 - 2 * d2 * (b + i)),
        ),
        (
            MsfLabel::new(i - 1, d1, d2),
            qi(-2 * i * (b + i) - 2 * i * d2),
        ),
        (MsfLabel::new(i - 1, d1 - 1, d2 + 1), qi(-2 * i * d1)),
        (MsfLabel::new(i + 1, d1 - 1, d2), qi(-2 * (a - i) * d1)),
        (MsfLabel::new(i + 1, d1, d2 - 1), qi(-2 * (a - i) * d2)),
    ]
}

/// Compares `R Q_lambda` against `c_lambda Q_lambda + sum of moves` for the
/// given move table.
pub fn lowering_residual(
    op: &RadialCasimir,
    label: &MsfLabel,
    moves: &[(MsfLabel, Rational)],
) -> Result<(MTypeVectorFn, Vec<MsfLabel>), Error> {
    let params = op.params();
    let lhs = op.apply(&q_label(params, label)?)?;
    let mut rhs = q_label(params, label)?.scale(&casimir_eigenvalue(params, label));
    let mut invalid_nonzero = Vec::new();
    for (target, c) in moves {
        if c.is_zero() {
            continue;
        }
        if !target.is_valid(params) {
            invalid_nonzero.push(*target);
            continue;
        }
        rhs = rhs.add(&q_label(params, target)?.scale(c));
    }
    Ok((lhs.sub(&rhs), invalid_nonzero))
}

pub fn verify_general_lowering(params: &PairParams, label: &MsfLabel) -> Result<Report, Error> {
    let op = RadialCasimir::new(params)?;
    verify_general_lowering_with(&op, label)
}

pub fn verify_general_lowering_with(op: &RadialCasimir, label: &MsfLabel) -> Result<Report, Error> {
    let params = *op.params();
    let moves = lowering_moves(&params, label);
    let (res, invalid) = lowering_residual(op, label, &moves)?;
    let tag = params.tag();
    let name = format!(
        "lowering moves for (i,d1,d2)=({},{},{})",
        label.i, label.d1, label.d2
    );
    let mut r = Report::new();
    r.check("casimir", &tag, &name, res.is_zero(), || residual(&res));
    r.check(
        "casimir",
        &tag,
        &format!("{} vanish on invalid targets", name),
        invalid.is_empty(),
        || format!("nonzero coefficient towards {:?}", invalid),
    );
    Ok(r)
}

/// The scalar radial operator for `mu = 0` in `(psi1, psi2)`, acting from
/// the right.
pub fn r0_psi_op(m: i64) -> MatrixDiffOp {
    let v = Vars::psi();
    let p1 = MultiPoly::var(&v, 0);
    let p2 = MultiPoly::var(&v, 1);
    let one = MultiPoly::one(&v);
    let lin = |c1: i64, c2: i64, c0: i64| {
        &(&p1.scale(&qi(c1)) + &p2.scale(&qi(c2))) + &one.scale(&qi(c0))
    };
    MatrixDiffOp::scalar(
        &v,
        Side::Right,
        [
            (
                DerivIndex::D11,
                &(&p1.pow(2).scale(&qi(2)) - &p1.scale(&qi(2))) - &p2.scale(&qi(4)),
            ),
            (
                DerivIndex::D22,
                &p2.pow(2).scale(&qi(4)) - &(&p1 * &p2).scale(&qi(2)),
            ),
            (
                DerivIndex::D12,
                &(&p1 * &p2).scale(&qi(4)) - &p2.scale(&qi(8)),
            ),
            (DerivIndex::D1, lin(2 * m + 4, 0, -8)),
            (DerivIndex::D2, lin(-2, 4 * m + 4, 0)),
        ],
    )
    .expect("two variables")
}

/// Applies the radial operator at `mu = 0` to a scalar polynomial in
/// `(psi1, psi2)` by passing through `(c1, c2)`.
pub fn r0_via_torus(m: i64, f: &MultiPoly) -> Result<MultiPoly, Error> {
    let params = PairParams::new(m, 0, 0)?;
    let op = RadialCasimir::new(&params)?;
    let g = MTypeVectorFn::new(&params, vec![coords::psi_to_c(f)?])?;
    let out = op.apply(&g)?;
    Ok(symmetric_reduce(&out.components[0])?)
}

/// Tridiagonal `C1`, `C2` in `(psi1, psi2)` with
/// `sum_p dpsi_i/dt_p dQ0/dt_p = C_i Q0`.
pub fn c_matrices(params: &PairParams) -> Result<(PolyMatrix, PolyMatrix), Error> {
    params.require_canonical()?;
    let PairParams { a, b, .. } = *params;
    let v = Vars::psi();
    let p1 = MultiPoly::var(&v, 0);
    let p2 = MultiPoly::var(&v, 1);
    let one = MultiPoly::one(&v);
    let n = params.size();
    let mut c1 = PolyMatrix::zeros(&v, n, n);
    let mut c2 = PolyMatrix::zeros(&v, n, n);
    for r in 0..n {
        let ri = r as i64;
        c1.set(
            r,
            r,
            (&one.scale(&qi(a + 2 * b + 2 * ri)) - &p1.scale(&qi(a + b + ri))).scale(&qi(2)),
        );
        c2.set(
            r,
            r,
            (&p1.scale(&qi(b + ri)) - &p2.scale(&qi(a + 2 * b + 2 * ri))).scale(&qi(2)),
        );
        if r > 0 {
            let e = p2.scale(&qi(2 * ri));
            c1.set(r, r - 1, e.clone());
            c2.set(r, r - 1, e);
        }
        if r + 1 < n {
            let e = one.scale(&qi(2 * (a - ri)));
            c1.set(r, r + 1, e.clone());
            c2.set(r, r + 1, e);
        }
    }
    Ok((c1, c2))
}

/// The first-order operator `d/dpsi1 C1 + d/dpsi2 C2`, acting from the right.
pub fn c_psi_op(params: &PairParams) -> Result<MatrixDiffOp, Error> {
    let (c1, c2) = c_matrices(params)?;
    Ok(MatrixDiffOp::new(&Vars::psi(), params.size(), Side::Right)?
        .with(DerivIndex::D1, c1)?
        .with(DerivIndex::D2, c2)?)
}

pub fn c_identity_check(params: &PairParams) -> Result<Report, Error> {
    let (c1, c2) = c_matrices(params)?;
    let q0 = q0_matrix(params)?;
    let v = Vars::c();
    let one = MultiPoly::one(&v);
    let ssq = [
        &one - &MultiPoly::var(&v, 0).pow(2),
        &one - &MultiPoly::var(&v, 1).pow(2),
    ];
    let psi = coords::psi_in_c();
    let tag = params.tag();
    let mut r = Report::new();
    for (name, psi_i, c) in [("C1", &psi[0], &c1), ("C2", &psi[1], &c2)] {
        let mut lhs = PolyMatrix::zeros(&v, q0.rows(), q0.cols());
        for (p, s) in ssq.iter().enumerate() {
            let f = s * &psi_i.derive(p);
            lhs = lhs.add(&q0.derive(p).scale_poly(&f))?;
        }
        let rhs = coords::matrix_psi_to_c(c)?.mul(&q0)?;
        r.check(
            "casimir",
            &tag,
            &format!("{} conjugation identity", name),
            lhs == rhs,
            || match lhs.sub(&rhs) {
                Ok(d) => format!("difference:\n{}", d),
                Err(e) => format!("{}", e),
            },
        );
    }
    let n = params.size();
    let off = (0..n).all(|i| (0..n).all(|j| i == j || c1.get(i, j) == c2.get(i, j)));
    r.check(
        "casimir",
        &tag,
        "C1 and C2 agree off the diagonal",
        off,
        || String::from("mismatch"),
    );
    Ok(r)
}

/// The operators of the matrix PDE in `x`-coordinates, in the closed form
/// stated alongside the orthogonality relations.
#[derive(Clone, Debug)]
pub struct XOperatorFamily {
    pub r0_x: MatrixDiffOp,
    pub cmu: MatrixDiffOp,
    pub lambda0: QMatrix,
    pub shift: QMatrix,
}

pub fn lambda_d(params: &PairParams, d1: i64, d2: i64) -> QMatrix {
    let n = params.size();
    QMatrix::from_fn(n, n, |i, j| {
        if i == j {
            casimir_eigenvalue(params, &MsfLabel::new(i as i64, d1, d2))
        } else {
            Rational::zero()
        }
    })
}

/// `S_{r,r-1} = -2r(b+r)`.
pub fn shift_matrix(params: &PairParams) -> QMatrix {
    let n = params.size();
    QMatrix::from_fn(n, n, |i, j| {
        if j + 1 == i {
            qi(-2 * i as i64 * (params.b + i as i64))
        } else {
            Rational::zero()
        }
    })
}

pub fn x_operator_family(params: &PairParams) -> Result<XOperatorFamily, Error> {
    params.require_canonical()?;
    let PairParams { m, a, b } = *params;
    let v = Vars::x();
    let x1 = MultiPoly::var(&v, 0);
    let x2 = MultiPoly::var(&v, 1);
    let one = MultiPoly::one(&v);
    let k = |c: i64| one.scale(&qi(c));
    let r0_x = MatrixDiffOp::scalar(
        &v,
        Side::Right,
        [
            (
                DerivIndex::D11,
                &(&x1.pow(2).scale(&qi(2)) - &x2.scale(&qi(4))) - &k(4),
            ),
            (
                DerivIndex::D22,
                &(&x1.pow(2).scale(&qi(-2)) + &x2.pow(2).scale(&qi(4))) + &x2.scale(&qi(4)),
            ),
            (DerivIndex::D12, (&x1 * &(&x2 - &one)).scale(&qi(4))),
            (
                DerivIndex::D1,
                (&x1.scale(&qi(m + 2)) + &k(2 * m - 4)).scale(&qi(2)),
            ),
            (
                DerivIndex::D2,
                (&(&x1.scale(&qi(m - 2)) + &k(2)) + &x2.scale(&qi(2 * m + 2))).scale(&qi(2)),
            ),
        ],
    )?;
    let n = params.size();
    let mut c1 = PolyMatrix::zeros(&v, n, n);
    let mut c2 = PolyMatrix::zeros(&v, n, n);
    let s = &(&x1 + &x2) + &one;
    for r in 0..n {
        let ri = r as i64;
        c1.set(
            r,
            r,
            (&x1.scale(&qi(a + b + ri)) - &k(2 * b + 2 * ri)).scale(&qi(2)),
        );
        let d = &(&x2.scale(&qi(2)) - &x1).scale(&qi(b + ri)) + &(&x2 + &one).scale(&qi(a));
        c2.set(r, r, d.scale(&qi(2)));
        if r > 0 {
            c1.set(r, r - 1, s.scale(&qi(-ri)));
            c2.set(r, r - 1, s.scale(&qi(-ri)));
        }
        if r + 1 < n {
            c1.set(r, r + 1, k(-4 * (a - ri)));
            c2.set(r, r + 1, k(-4 * (a - ri)));
        }
    }
    let cmu = MatrixDiffOp::new(&v, n, Side::Right)?
        .with(DerivIndex::D1, c1)?
        .with(DerivIndex::D2, c2)?;
    Ok(XOperatorFamily {
        r0_x,
        cmu,
        lambda0: lambda_d(params, 0, 0),
        shift: shift_matrix(params),
    })
}

fn transform_to_x(op: &MatrixDiffOp) -> Result<MatrixDiffOp, Error> {
    Ok(op.affine_transform(&coords::jacobian_x_psi(), &coords::psi_in_x())?)
}

/// Affine transform of the `psi`-coordinate operators against the closed
/// forms in `x`. The first-order matrix operator is compared against the
/// transform of `-(d/dpsi1 C1 + d/dpsi2 C2)`, which is the sign with which
/// it enters the `psi`-coordinate equation.
pub fn transform_check(params: &PairParams) -> Result<Report, Error> {
    let fam = x_operator_family(params)?;
    let tag = params.tag();
    let mut r = Report::new();
    let r0 = transform_to_x(&r0_psi_op(params.m))?;
    let diff = r0.differing_coeffs(&fam.r0_x);
    r.check(
        "transform",
        &tag,
        "scalar operator in x equals transformed psi operator",
        diff.is_empty(),
        || format!("coefficients differ: {}", names(&diff, &Vars::x())),
    );
    let cx = transform_to_x(&c_psi_op(params)?.scale(&qi(-1)))?;
    let diff = cx.differing_coeffs(&fam.cmu);
    r.check(
        "transform",
        &tag,
        "matrix first-order operator in x equals transformed -C",
        diff.is_empty(),
        || format!("coefficients differ: {}", names(&diff, &Vars::x())),
    );
    Ok(r)
}

fn names(idx: &[DerivIndex], v: &Vars) -> String {
    idx.iter()
        .map(|i| i.describe(v))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Constants in `psi1 = xi11 phi1 + xi01`, `psi2 = xi22 phi2 + xi12 phi1 + xi02`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiConstants {
    pub xi11: Rational,
    pub xi01: Rational,
    pub xi22: Rational,
    pub xi12: Rational,
    pub xi02: Rational,
}

impl XiConstants {
    /// `phi1` and `phi2` as polynomials in `(psi1, psi2)`.
    pub fn inversions(&self) -> Result<(MultiPoly, MultiPoly), Error> {
        let v = Vars::psi();
        let p1 = MultiPoly::var(&v, 0);
        let p2 = MultiPoly::var(&v, 1);
        let one = MultiPoly::one(&v);
        if self.xi11.is_zero() || self.xi22.is_zero() {
            return Err(Error::Singular(String::from("vanishing leading xi")));
        }
        let phi1 = (&p1 - &one.scale(&self.xi01)).scale(&(qi(1) / &self.xi11));
        let phi2 = (&(&p2 - &phi1.scale(&self.xi12)) - &one.scale(&self.xi02))
            .scale(&(qi(1) / &self.xi22));
        Ok((phi1, phi2))
    }
}

/// Solves for the xi constants from the action of the radial operator on
/// `psi1`, `psi2` (computed on the torus) and the normalisations
/// `phi_i(e) = 1`, `psi1(e) = 2`, `psi2(e) = 1`.
pub fn xi_relation_solver(m: i64) -> Result<XiConstants, Error> {
    let psi = Vars::psi();
    let p1 = MultiPoly::var(&psi, 0);
    let p2 = MultiPoly::var(&psi, 1);
    let r1 = r0_via_torus(m, &p1)?;
    let r2 = r0_via_torus(m, &p2)?;
    let params = PairParams::new(m, 0, 0)?;
    let l1 = casimir_eigenvalue(&params, &MsfLabel::new(0, 1, 0));
    let l2 = casimir_eigenvalue(&params, &MsfLabel::new(0, 0, 1));

    // R psi1 = alpha psi1 + beta must have alpha = c_{lambda1}
    let alpha = r1.coeff(&[1, 0]);
    let beta = r1.constant_term();
    if alpha != l1 || r1.num_terms() > 2 || l1.is_zero() {
        return Err(Error::Singular(format!(
            "R psi1 = {} is not compatible",
            r1
        )));
    }
    let xi01 = -beta / &l1;
    let xi11 = qi(2) - &xi01;

    let gamma = r2.coeff(&[0, 1]);
    let eps = r2.coeff(&[1, 0]);
    let zeta = r2.constant_term();
    if gamma != l2 || l1 == l2 || l2.is_zero() {
        return Err(Error::Singular(format!(
            "R psi2 = {} is not compatible",
            r2
        )));
    }
    let gap = &l1 - &l2;
    let xi12 = &eps * &xi11 / &gap;
    let xi02 = (-zeta - &xi12 * &gap * &xi01 / &xi11) / &l2;
    let xi22 = qi(1) - &xi12 - &xi02;
    Ok(XiConstants {
        xi11,
        xi01,
        xi22,
        xi12,
        xi02,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, a: i64, b: i64) -> PairParams {
        PairParams::new(m, a, b).unwrap()
    }

    #[test]
    fn trivial_type_kills_constants() {
        let params = p(3, 0, 0);
        let op = RadialCasimir::new(&params).unwrap();
        let one = MTypeVectorFn::new(&params, vec![MultiPoly::one(&Vars::c())]).unwrap();
        assert!(op.apply(&one).unwrap().is_zero());
    }

    #[test]
    fn generators_on_torus() {
        for m in 3..6 {
            let psi = Vars::psi();
            let p1 = MultiPoly::var(&psi, 0);
            let p2 = MultiPoly::var(&psi, 1);
            let one = MultiPoly::one(&psi);
            let r1 = r0_via_torus(m, &p1).unwrap();
            assert_eq!(r1, &p1.scale(&qi(2 * m + 4)) - &one.scale(&qi(8)));
            let r2 = r0_via_torus(m, &p2).unwrap();
            assert_eq!(r2, &p2.scale(&qi(4 * m + 4)) - &p1.scale(&qi(2)));
        }
    }

    #[test]
    fn scalar_psi_operator_on_psi1() {
        let m = 4;
        let v = Vars::psi();
        let f = PolyMatrix::from_entries(&v, 1, 1, vec![MultiPoly::var(&v, 0)]).unwrap();
        let out = r0_psi_op(m).apply(&f).unwrap();
        let expect = &MultiPoly::var(&v, 0).scale(&qi(2 * m + 4)) - &MultiPoly::constant(&v, qi(8));
        assert_eq!(out.get(0, 0), &expect);
    }

    #[test]
    fn non_polynomial_input_is_detected() {
        // c1 alone has the wrong parity for the trivial type
        let params = p(3, 0, 0);
        let op = RadialCasimir::new(&params).unwrap();
        let f = MTypeVectorFn::new(&params, vec![MultiPoly::var(&Vars::c(), 0)]).unwrap();
        assert!(matches!(
            op.apply(&f),
            Err(Error::NonPolynomialResidue { component: 0 })
        ));
    }

    #[test]
    fn bottom_and_c_identities_small() {
        let params = p(3, 1, 1);
        assert!(!bottom_lowering_check(&params).unwrap().has_failures());
        assert!(!c_identity_check(&params).unwrap().has_failures());
        assert!(!transform_check(&params).unwrap().has_failures());
    }

    #[test]
    fn single_move_for_lambda1() {
        let params = p(3, 0, 0);
        let moves = lowering_moves(&params, &MsfLabel::new(0, 1, 0));
        assert_eq!(moves[0], (MsfLabel::new(0, 0, 0), qi(-8)));
        assert!(moves[1..].iter().all(|(_, c)| c.is_zero()));
        assert!(!verify_general_lowering(&params, &MsfLabel::new(0, 1, 0))
            .unwrap()
            .has_failures());
    }

    #[test]
    fn xi_constants() {
        for m in 3..7 {
            let xi = xi_relation_solver(m).unwrap();
            assert_eq!(xi.xi11, q(2 * m, m + 2));
            assert_eq!(xi.xi01, q(4, m + 2));
            assert_eq!(xi.xi12, q(2, m + 2));
            assert_eq!(xi.xi02, q(2, (m + 1) * (m + 2)));
            assert_eq!(xi.xi22, q(m - 1, m + 1));
        }
    }
}
