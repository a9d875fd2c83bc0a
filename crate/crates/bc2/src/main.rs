use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bc2::error::CliError;
use bc2::export::{write_grid, DEFAULT_POINTS};
use bc2::json::{self, matrix_to_json, rational_to_json, report_to_json, MatrixJson};
use bc2::runner::{run_suite, SuiteConfig};
use bc2_core::coords;
use bc2_core::expansion::matrix_op;
use bc2_core::krawtchouk;
use bc2_core::leading::s_matrix;
use bc2_core::lie::{casimir_eigenvalue, label_weight, weyl_dim, MsfLabel, PairParams};
use bc2_core::orthogonality::{degrees_up_to, integrate_against_delta};
use bc2_core::report::Report;
use bc2_core::suites::Suite;
use bc2_core::symbolic::rational::{self, Rational};
use bc2_core::symbolic::{MultiPoly, PolyMatrix, Vars};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "bc2",
    version,
    about = "Exact BC2 matrix orthogonal polynomials and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coords {
    C,
    Psi,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Weight,
    Polys,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Option<Vec<i64>>,
    #[arg(long, default_value_t = 2)]
    dmax: i64,
    /// Degree bound of the PDE suite for a <= 2.
    #[arg(long)]
    pde_dmax: Option<i64>,
    /// Also compare every exact integral with Gauss-Legendre quadrature.
    #[arg(long)]
    numeric: bool,
    /// Largest N for the Krawtchouk suite.
    #[arg(long = "N")]
    big_n: Option<i64>,
    /// Krawtchouk parameters p, e.g. `1/4,1/3`.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 1 if any identity fails.
    Verify(VerifyArgs),
    /// The weight matrix S as JSON.
    Weight {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, value_enum, default_value_t = Coords::Psi)]
        coords: Coords,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The matrix polynomial of degree d (Q_d in psi, R_d in x) as JSON.
    Polys {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Degree `d1,d2`.
        #[arg(long, value_delimiter = ',', default_values_t = [0, 0])]
        d: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Coords::X)]
        coords: Coords,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Highest weights, dimensions and Casimir eigenvalues of labels.
    Dims {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// One label `i,d1,d2`; otherwise all labels with d1+d2 <= dmax.
        #[arg(long, value_delimiter = ',')]
        label: Option<Vec<i64>>,
        #[arg(long, default_value_t = 2)]
        dmax: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact moment of c1^p c2^q against the torus density.
    Moments {
        #[arg(long)]
        m: i64,
        /// Exponents `p,q` of c1 and c2 (both even).
        #[arg(long, value_delimiter = ',')]
        monomial: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV evaluation grid over the bounding box of region I.
    Export {
        #[arg(long, value_enum)]
        kind: ExportKind,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        b: i64,
        #[arg(long, value_delimiter = ',', default_values_t = [0, 0])]
        d: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn arity<T: Copy>(name: &str, v: &[T], n: usize) -> Result<(), CliError> {
    if v.len() == n {
        Ok(())
    } else {
        Err(CliError::Invalid(format!(
            "--{} takes {} comma-separated values",
            name, n
        )))
    }
}

fn flip(m: &PolyMatrix) -> Result<PolyMatrix, CliError> {
    let j = PolyMatrix::flip(m.vars(), m.rows());
    Ok(j.mul(m)?.mul(&j)?)
}

/// Canonical parameters and whether the result must be conjugated by `J`.
fn canonical(params: &PairParams) -> (PairParams, bool) {
    if params.is_canonical() {
        (*params, false)
    } else {
        (params.dualize(), true)
    }
}

#[derive(Serialize)]
struct MatrixOut {
    params: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<[i64; 2]>,
    matrix: MatrixJson,
}

fn write_matrix(
    mat: &PolyMatrix,
    params: &PairParams,
    d: Option<[i64; 2]>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    match format {
        Format::Json => emit(
            out,
            &json::to_string_pretty(&MatrixOut {
                params: params.tag(),
                d,
                matrix: matrix_to_json(mat),
            })?,
        ),
        Format::Text => emit(out, &format!("{}\n", mat)),
    }
}

fn weight_matrix(params: &PairParams, coords_: Coords) -> Result<PolyMatrix, CliError> {
    let (canon, dual) = canonical(params);
    let s = s_matrix(&canon)?;
    let mat = match coords_ {
        Coords::C => s.entries_c,
        Coords::Psi => s.entries_psi,
        Coords::X => {
            if canon.b != 0 {
                return Err(CliError::Invalid(
                    "the weight in x-coordinates is defined for b = 0".into(),
                ));
            }
            coords::matrix_psi_to_x(&s.entries_psi)?
        }
    };
    if dual {
        flip(&mat)
    } else {
        Ok(mat)
    }
}

fn poly_matrix(params: &PairParams, d: &[i64], coords_: Coords) -> Result<PolyMatrix, CliError> {
    let (canon, dual) = canonical(params);
    let op = matrix_op(&canon, d[0], d[1])?;
    let mat = match coords_ {
        Coords::Psi => op.q_psi,
        Coords::X => op.r_x,
        Coords::C => coords::matrix_psi_to_c(&op.q_psi)?,
    };
    if dual {
        flip(&mat)
    } else {
        Ok(mat)
    }
}

#[derive(Serialize)]
struct DimRow {
    label: [i64; 3],
    weight: Vec<i64>,
    dim: String,
    eigenvalue: String,
}

#[derive(Serialize)]
struct MomentOut {
    m: i64,
    monomial: [u32; 2],
    delta_moment: String,
}

fn verify(args: VerifyArgs) -> Result<Report, CliError> {
    let VerifyArgs {
        suite,
        m: ms,
        a: as_,
        b: bs,
        dmax,
        pde_dmax,
        numeric,
        big_n,
        p: ps,
        ..
    } = args;
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(CliError::Invalid)?]
    };
    if suites == [Suite::Krawtchouk] && (big_n.is_some() || ps.is_some()) {
        let ps = match ps {
            Some(ps) => ps
                .iter()
                .map(|s| json::rational_from_json(s))
                .collect::<Result<Vec<Rational>, _>>()?,
            None => vec![
                rational::q(1, 4),
                rational::q(1, 3),
                rational::q(1, 2),
                rational::q(2, 3),
            ],
        };
        return Ok(krawtchouk::suite(big_n.unwrap_or(6), &ps)?);
    }
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        ms: ms.unwrap_or(d.ms),
        as_: as_.unwrap_or(d.as_),
        bs: bs.unwrap_or(d.bs),
        dmax,
        pde_dmax: pde_dmax.unwrap_or(dmax.max(d.pde_dmax)),
        suites,
        numeric,
        quadrature_order: d.quadrature_order,
    };
    run_suite(&cfg)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify(args) => {
            let (format, out) = (args.format, args.out.clone());
            let report = verify(args)?;
            match format {
                Format::Text => emit(&out, &format!("{}\n", report))?,
                Format::Json => emit(&out, &json::to_string_pretty(&report_to_json(&report))?)?,
            }
            Ok(if report.has_failures() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Weight {
            m,
            a,
            b,
            coords,
            format,
            out,
        } => {
            let params = PairParams::new(m, a, b)?;
            write_matrix(
                &weight_matrix(&params, coords)?,
                &params,
                None,
                format,
                &out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Polys {
            m,
            a,
            b,
            d,
            coords,
            format,
            out,
        } => {
            arity("d", &d, 2)?;
            let params = PairParams::new(m, a, b)?;
            write_matrix(
                &poly_matrix(&params, &d, coords)?,
                &params,
                Some([d[0], d[1]]),
                format,
                &out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims {
            m,
            a,
            b,
            label,
            dmax,
            out,
        } => {
            let params = PairParams::new(m, a, b)?;
            let labels = match label {
                Some(l) => {
                    arity("label", &l, 3)?;
                    vec![MsfLabel::new(l[0], l[1], l[2])]
                }
                None => (0..=a)
                    .flat_map(|i| {
                        degrees_up_to(dmax)
                            .into_iter()
                            .map(move |(d1, d2)| MsfLabel::new(i, d1, d2))
                    })
                    .collect(),
            };
            let rows = labels
                .iter()
                .map(|l| {
                    let w = label_weight(&params, l)?;
                    Ok(DimRow {
                        label: [l.i, l.d1, l.d2],
                        weight: w.omega.clone(),
                        dim: weyl_dim(&w)?.to_string(),
                        eigenvalue: rational_to_json(&casimir_eigenvalue(&params, l)),
                    })
                })
                .collect::<Result<Vec<_>, bc2_core::Error>>()?;
            emit(&out, &json::to_string_pretty(&rows)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Moments { m, monomial, out } => {
            arity("monomial", &monomial, 2)?;
            PairParams::new(m, 0, 0)?;
            let p = MultiPoly::monomial(&Vars::c(), monomial.clone(), rational::qi(1));
            let v = integrate_against_delta(m, &p)?;
            emit(
                &out,
                &json::to_string_pretty(&MomentOut {
                    m,
                    monomial: [monomial[0], monomial[1]],
                    delta_moment: rational_to_json(&v),
                })?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            kind,
            m,
            a,
            b,
            d,
            points,
            out,
        } => {
            arity("d", &d, 2)?;
            let params = PairParams::new(m, a, b)?;
            let mat = match kind {
                ExportKind::Weight => weight_matrix(&params, Coords::X)?,
                ExportKind::Polys => poly_matrix(&params, &d, Coords::X)?,
            };
            let file = fs::File::create(&out)?;
            write_grid(io::BufWriter::new(file), &mat, points)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
