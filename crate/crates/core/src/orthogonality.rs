//! Exact integration over the torus and over region `I`, orthogonality of
//! `R_d`, positivity of the weight and indecomposability.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::coords;
use crate::expansion::{matrix_op, MatrixOP};
use crate::leading::s_matrix;
use crate::lie::{label_weight, weyl_dim, MsfLabel, PairParams};
use crate::reference::orthogonality_constant_printed;
use crate::report::{Report, Status};
use crate::symbolic::rational::{factorial, pow, q, qi, Rational};
use crate::symbolic::{MultiPoly, PolyMatrix, QMatrix, SymbolicError, Vars};
use crate::Error;

/// `int_0^{pi/2} cos^{2p+1} t sin^{2m-3} t dt = p! (m-2)! / (2 (p+m-1)!)`.
pub fn beta_moment(m: i64, p: u32) -> Rational {
    factorial(p) * factorial((m - 2) as u32) / (qi(2) * factorial(p + (m - 1) as u32))
}

/// `4 (c1^2 - c2^2)^2`, the polynomial part of the density after removing
/// `s1^{2m-3} s2^{2m-3} c1 c2`.
fn density_poly() -> MultiPoly {
    let v = Vars::c();
    let d =
        &MultiPoly::monomial(&v, vec![2, 0], qi(1)) - &MultiPoly::monomial(&v, vec![0, 2], qi(1));
    (&d * &d).scale(&qi(4))
}

/// `int_{[0,pi/2]^2} p(c1,c2) delta dt` with
/// `delta = 4 s1^{2m-3} s2^{2m-3} c1 c2 (c1^2-c2^2)^2`.
pub fn integrate_against_delta(m: i64, p: &MultiPoly) -> Result<Rational, Error> {
    if p.vars() != &Vars::c() {
        return Err(SymbolicError::UnknownVariable(p.vars().describe()).into());
    }
    if !p.exponents_have_parity(0, 0) || !p.exponents_have_parity(1, 0) {
        return Err(Error::ParityViolation(format!("{}", p)));
    }
    let full = p * &density_poly();
    Ok(full
        .terms()
        .map(|(mono, c)| c * beta_moment(m, mono.0[0] / 2) * beta_moment(m, mono.0[1] / 2))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// `int_A |delta|` in closed form.
pub fn delta_mass(m: i64) -> Rational {
    q(32, m * m * (m * m - 1))
}

/// Moments of the region-`I` weight
/// `(1-x1+x2)^{m-2} (1+x1+x2)^b (x1^2-4x2)^{1/2}` against `psi1^i psi2^j`.
/// The 2:1 pullback to the torus turns the weight times `dx` into
/// `8 * 4^{m-2+b} (c1 c2)^{2b} delta dt`.
#[derive(Clone, Debug)]
pub struct RegionMoments {
    m: i64,
    b: i64,
    prefactor: Rational,
    cache: BTreeMap<(u32, u32), Rational>,
}

impl RegionMoments {
    pub fn new(m: i64, b: i64) -> Self {
        RegionMoments {
            m,
            b,
            prefactor: qi(8) * pow(&qi(4), (m - 2 + b) as u32),
            cache: BTreeMap::new(),
        }
    }

    pub fn moment(&mut self, i: u32, j: u32) -> Result<Rational, Error> {
        if let Some(v) = self.cache.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = Vars::c();
        let [p1, p2] = coords::psi_in_c();
        let integrand = &p1.pow(i) * &p2.pow(j + self.b as u32);
        let val = &self.prefactor * integrate_against_delta(self.m, &integrand)?;
        debug_assert_eq!(integrand.vars(), &v);
        self.cache.insert((i, j), val.clone());
        Ok(val)
    }

    /// Integral of a polynomial in `psi`.
    pub fn integrate_psi(&mut self, p: &MultiPoly) -> Result<Rational, Error> {
        if p.vars() != &Vars::psi() {
            return Err(SymbolicError::UnknownVariable(p.vars().describe()).into());
        }
        let mut acc = Rational::zero();
        for (mono, c) in p.terms() {
            acc += c * self.moment(mono.0[0], mono.0[1])?;
        }
        Ok(acc)
    }

    pub fn integrate_matrix_psi(&mut self, mat: &PolyMatrix) -> Result<QMatrix, Error> {
        let mut out = QMatrix::zeros(mat.rows(), mat.cols());
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                out.set(i, j, self.integrate_psi(mat.get(i, j))?);
            }
        }
        Ok(out)
    }
}

/// `int_I M w dx` for `M` in `x`.
pub fn region_integral(m: i64, b: i64, mat: &PolyMatrix) -> Result<QMatrix, Error> {
    let psi = mat.try_map(coords::x_to_psi)?;
    RegionMoments::new(m, b).integrate_matrix_psi(&psi)
}

/// Region `I`: `x2 >= x1 - 1`, `x2 >= -1 - x1`, `x2 <= x1^2/4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RegionI;

impl RegionI {
    pub const CORNERS: [(i64, i64); 3] = [(2, 1), (-2, 1), (0, -1)];

    pub fn contains(&self, x1: f64, x2: f64) -> bool {
        x2 >= x1 - 1.0 && x2 >= -1.0 - x1 && 4.0 * x2 <= x1 * x1
    }

    pub fn contains_exact(&self, x1: &Rational, x2: &Rational) -> bool {
        let one = Rational::one();
        *x2 >= x1 - &one && *x2 >= -&one - x1 && qi(4) * x2 <= x1 * x1
    }

    /// Bounding box `[x1_min, x1_max] x [x2_min, x2_max]`.
    pub fn bounding_box(&self) -> ((f64, f64), (f64, f64)) {
        ((-2.0, 2.0), (-1.0, 1.0))
    }
}

/// Degrees `d` with `d1 + d2 <= dmax`, ordered by total degree.
pub fn degrees_up_to(dmax: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in 0..=dmax {
        for d2 in 0..=n {
            out.push((n - d2, d2));
        }
    }
    out
}

/// Exact Gram blocks `G(d,d') = int_I R_d S^a R_{d'}^T w dx`.
#[derive(Clone, Debug)]
pub struct GramTable {
    pub params: PairParams,
    pub degrees: Vec<(i64, i64)>,
    pub ops: Vec<MatrixOP>,
    pub blocks: BTreeMap<(usize, usize), QMatrix>,
}

pub fn gram_table(params: &PairParams, dmax: i64) -> Result<GramTable, Error> {
    let degrees = degrees_up_to(dmax);
    let ops: Vec<MatrixOP> = degrees
        .iter()
        .map(|&(d1, d2)| matrix_op(params, d1, d2))
        .collect::<Result<_, _>>()?;
    let s0 = s_matrix(&PairParams::new(params.m, params.a, 0)?)?.entries_psi;
    let mut moments = RegionMoments::new(params.m, params.b);
    let mut blocks = BTreeMap::new();
    for (x, ox) in ops.iter().enumerate() {
        let left = ox.q_psi.mul(&s0)?;
        for (y, oy) in ops.iter().enumerate().skip(x) {
            let integrand = left.mul(&oy.q_psi.transpose())?;
            blocks.insert((x, y), moments.integrate_matrix_psi(&integrand)?);
        }
    }
    Ok(GramTable {
        params: *params,
        degrees,
        ops,
        blocks,
    })
}

fn is_zero_matrix(m: &QMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j).is_zero()))
}

fn is_diagonal(m: &QMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

/// `((d1, d2), k, kappa)`.
pub type KappaEntry = ((i64, i64), usize, Rational);

/// Normalised diagonal `G(d,d)_{kk} dim V_{nu_k + d1 lambda1 + d2 lambda2} / (a+1)^2`.
pub fn kappa_values(table: &GramTable) -> Result<Vec<KappaEntry>, Error> {
    let params = &table.params;
    let n = params.size();
    let scale = qi((params.a + 1) * (params.a + 1));
    let mut out = Vec::new();
    for (x, &(d1, d2)) in table.degrees.iter().enumerate() {
        let g = &table.blocks[&(x, x)];
        for k in 0..n {
            let w = label_weight(params, &MsfLabel::new(k as i64, d1, d2))?;
            let dim = Rational::from_integer(weyl_dim(&w)?);
            out.push(((d1, d2), k, g.get(k, k) * dim / &scale));
        }
    }
    Ok(out)
}

/// Orthogonality suite. Returns the report and the common value of kappa.
pub fn orthogonality_suite(
    params: &PairParams,
    dmax: i64,
) -> Result<(Report, GramTable, Option<Rational>), Error> {
    let table = gram_table(params, dmax)?;
    let tag = format!("{},dmax={}", params.tag(), dmax);
    let mut r = Report::new();

    let bad_off: Vec<String> = table
        .blocks
        .iter()
        .filter(|((x, y), g)| x != y && !is_zero_matrix(g))
        .map(|((x, y), _)| format!("{:?} vs {:?}", table.degrees[*x], table.degrees[*y]))
        .collect();
    r.check(
        "orthogonality",
        &tag,
        "G(d,d') = 0 for d != d'",
        bad_off.is_empty(),
        || bad_off.join("; "),
    );

    let bad_diag: Vec<String> = (0..table.degrees.len())
        .filter(|x| !is_diagonal(&table.blocks[&(*x, *x)]))
        .map(|x| format!("{:?}", table.degrees[x]))
        .collect();
    r.check(
        "orthogonality",
        &tag,
        "G(d,d) is diagonal",
        bad_diag.is_empty(),
        || bad_diag.join("; "),
    );

    let positive = (0..table.degrees.len()).all(|x| {
        let g = &table.blocks[&(x, x)];
        (0..g.rows()).all(|k| g.get(k, k).is_positive())
    });
    r.check(
        "orthogonality",
        &tag,
        "G(d,d) has positive diagonal",
        positive,
        || String::from("non-positive entry"),
    );

    let kappas = kappa_values(&table)?;
    let first = kappas[0].2.clone();
    let uniform = kappas.iter().all(|(_, _, k)| *k == first);
    r.check(
        "orthogonality",
        &tag,
        "G(d,d)_kk dim V / (a+1)^2 independent of k and d",
        uniform,
        || {
            kappas
                .iter()
                .map(|(d, k, v)| format!("d={:?},k={}: {}", d, k, v))
                .collect::<Vec<_>>()
                .join("; ")
        },
    );
    let kappa = if uniform { Some(first) } else { None };
    if let Some(k) = &kappa {
        let printed = orthogonality_constant_printed(params.m, params.b);
        let ratio = k / &printed;
        let c = delta_mass(params.m);
        let status = if ratio.is_one() {
            Status::Pass
        } else {
            Status::Reported
        };
        r.push(
            "orthogonality",
            &tag,
            "normalisation constant against 2^{2m+2b-10} m^2 (m^2-1)",
            status,
            format!(
                "kappa = {}, stated = {}, ratio = {} over {} (d,k) pairs; ratio {} c^2 with c = int |delta| = {}",
                k,
                printed,
                ratio,
                kappas.len(),
                if ratio == &c * &c { "equals" } else { "differs from" },
                c
            ),
        );
    }
    Ok((r, table, kappa))
}

/// Sample points `(c1^2, c2^2)` strictly inside `(0,1)^2` with `c1 != c2`.
fn interior_samples() -> Vec<(Rational, Rational)> {
    let vals = [q(1, 7), q(1, 3), q(1, 2), q(3, 5), q(6, 7), q(19, 20)];
    let mut out = Vec::new();
    for (i, u) in vals.iter().enumerate() {
        for w in &vals[i + 1..] {
            out.push((u.clone(), w.clone()));
        }
    }
    out
}

fn psi_point(u: &Rational, w: &Rational) -> [Rational; 2] {
    [u + w, u * w]
}

/// Leading-minor positivity of `S` at interior points, positive determinant
/// there and vanishing determinant on the parabola and on `x2 = -1 - x1`.
pub fn positivity_check(params: &PairParams) -> Result<Report, Error> {
    let s = s_matrix(params)?.entries_psi;
    let det = s.det()?;
    let tag = params.tag();
    let mut r = Report::new();
    let mut bad = Vec::new();
    for (u, w) in interior_samples() {
        let pt = psi_point(&u, &w);
        let minors = s.evaluate(&pt)?.leading_minors();
        if !minors.iter().all(|x| x.is_positive()) {
            bad.push(format!("(c1^2,c2^2)=({},{})", u, w));
        }
    }
    r.check(
        "weight",
        &tag,
        "S positive definite at interior points of I",
        bad.is_empty(),
        || bad.join("; "),
    );
    if params.a >= 1 {
        // c1 = c2 maps to the parabola, c1 = 0 to the line x2 = -1 - x1
        let mut boundary_ok = true;
        for u in [q(1, 5), q(1, 2), q(4, 5)] {
            boundary_ok &= det.evaluate(&psi_point(&u, &u))?.is_zero();
            boundary_ok &= det.evaluate(&psi_point(&Rational::zero(), &u))?.is_zero();
        }
        r.check(
            "weight",
            &tag,
            "det S vanishes on the parabola and on x2 = -1 - x1",
            boundary_ok,
            || format!("det S = {}", det),
        );
    }
    Ok(r)
}

/// Coefficient-matching system for `X S = eps S X^T` (or `X S = S X` when
/// `transpose` is false) with `X` a constant matrix of unknowns.
fn intertwiner_nullity(s: &PolyMatrix, eps: i64, transpose: bool) -> usize {
    let n = s.rows();
    let unknowns = n * n;
    // row per (entry, monomial)
    let mut rows: BTreeMap<(usize, usize, Vec<u32>), Vec<Rational>> = BTreeMap::new();
    let mut add = |i: usize, j: usize, var: usize, p: &MultiPoly, sign: &Rational| {
        for (mono, c) in p.terms() {
            let row = rows
                .entry((i, j, mono.0.clone()))
                .or_insert_with(|| vec![Rational::zero(); unknowns]);
            row[var] += sign * c;
        }
    };
    let plus = qi(1);
    let minus = qi(-eps);
    for i in 0..n {
        for j in 0..n {
            // (X S)_{ij} = sum_k X_{ik} S_{kj}
            for k in 0..n {
                add(i, j, i * n + k, s.get(k, j), &plus);
            }
            // (S X^T)_{ij} = sum_k S_{ik} X_{jk};  (S X)_{ij} = sum_k S_{ik} X_{kj}
            for k in 0..n {
                let var = if transpose { j * n + k } else { k * n + j };
                add(i, j, var, s.get(i, k), &minus);
            }
        }
    }
    let data: Vec<Rational> = rows.into_values().flatten().collect();
    let nrows = data.len() / unknowns;
    if nrows == 0 {
        return unknowns;
    }
    QMatrix::from_vec(nrows, unknowns, data).nullity()
}

/// `(dim {T : T S = S T}, dim_R {T : T S = S T^*})`.
pub fn indecomposability_check(params: &PairParams) -> Result<(usize, usize), Error> {
    let s = s_matrix(params)?.entries_psi;
    let commutant = intertwiner_nullity(&s, 1, false);
    let real = intertwiner_nullity(&s, 1, true) + intertwiner_nullity(&s, -1, true);
    Ok((commutant, real))
}

pub fn indecomposability_report(params: &PairParams) -> Result<Report, Error> {
    let (c, r) = indecomposability_check(params)?;
    let mut rep = Report::new();
    rep.check(
        "indecomposable",
        &params.tag(),
        "commutant and real intertwiner space are one-dimensional",
        c == 1 && r == 1,
        || format!("dimensions ({}, {})", c, r),
    );
    Ok(rep)
}

/// Exact checks on the integration machinery itself.
pub fn integration_check(m: i64) -> Result<Report, Error> {
    let v = Vars::c();
    let tag = format!("m={}", m);
    let mut r = Report::new();
    // [0, 2pi)^2 is sixteen copies of [0, pi/2]^2 for |delta|
    let mass = integrate_against_delta(m, &MultiPoly::one(&v))?;
    r.check(
        "orthogonality",
        &tag,
        "int |delta| over the torus = 32/(m^2(m^2-1))",
        qi(16) * &mass == delta_mass(m),
        || format!("16 * {} != {}", mass, delta_mass(m)),
    );
    let anti =
        &MultiPoly::monomial(&v, vec![2, 0], qi(1)) - &MultiPoly::monomial(&v, vec![0, 2], qi(1));
    let zero = integrate_against_delta(m, &anti)?;
    r.check(
        "orthogonality",
        &tag,
        "swap-antisymmetric integrand integrates to 0",
        zero.is_zero(),
        || format!("{}", zero),
    );
    Ok(r)
}
