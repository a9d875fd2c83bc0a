//! Acceptance gate: one line per criterion, exit status 1 if any fails.
//! Runs as a plain binary so the lines show up in `cargo test` output.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use bc2::numeric::{numeric_crosscheck, region_integral_numeric};
use bc2::runner::{run_suite, SuiteConfig};
use bc2_core::lie::PairParams;
use bc2_core::orthogonality::{
    gram_table, indecomposability_check, kappa_values, region_integral, GramTable,
};
use bc2_core::report::{Report, Status};
use bc2_core::suites::{self, Suite};
use bc2_core::symbolic::rational::{q, to_f64};
use bc2_core::symbolic::{PolyMatrix, Vars};

/// Relative tolerance of the quadrature comparison.
const QUAD_TOL: f64 = 1e-8;
/// Tolerance of the region mass `8/9` at `m = 3, b = 0`.
const MASS_TOL: f64 = 1e-10;
const QUAD_ORDER: usize = 64;

const MS: [i64; 3] = [3, 4, 5];
const AS: [i64; 4] = [0, 1, 2, 3];
const BS: [i64; 3] = [0, 1, 2];

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &Report, extra: &[(bool, String)]) -> Outcome {
    let mut notes = vec![format!(
        "{} pass, {} fail, {} reported",
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Reported)
    )];
    let mut ok = !r.has_failures() && r.count(Status::Pass) > 0;
    for f in r.failures().take(3) {
        notes.push(format!("{}", f));
    }
    for (good, msg) in extra {
        ok &= *good;
        if !good {
            notes.push(msg.clone());
        }
    }
    Outcome {
        ok,
        detail: notes.join("; "),
    }
}

fn config(suite: Suite) -> SuiteConfig {
    SuiteConfig {
        ms: MS.to_vec(),
        as_: AS.to_vec(),
        bs: BS.to_vec(),
        dmax: 2,
        pde_dmax: 3,
        suites: vec![suite],
        numeric: false,
        quadrature_order: QUAD_ORDER,
    }
}

/// Exact Gram tables with `|d| <= 2` over the grid, shared by criteria 7 and 9.
fn tables() -> &'static [GramTable] {
    static TABLES: OnceLock<Vec<GramTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut out = Vec::new();
        for &m in &MS {
            for &a in &AS {
                for &b in &BS {
                    out.push(gram_table(&PairParams::new(m, a, b).unwrap(), 2).unwrap());
                }
            }
        }
        out
    })
}

fn count_identity(r: &Report, needle: &str, status: Status) -> usize {
    r.checks
        .iter()
        .filter(|c| c.identity.contains(needle) && c.status == status)
        .count()
}

fn criterion_1() -> Outcome {
    let r = suites::krawtchouk_suite().expect("krawtchouk suite");
    let n = r.checks.len();
    from_report(&r, &[(n >= 4 * 7 * 4, format!("only {} checks", n))])
}

fn criterion_2() -> Outcome {
    let r = run_suite(&config(Suite::Weight)).expect("weight suite");
    let psi = count_identity(&r, "S in psi equals the displayed matrix", Status::Pass);
    let x = count_identity(&r, "S^a in x equals the displayed matrix", Status::Pass);
    from_report(
        &r,
        &[
            (
                psi == 2 * MS.len() * BS.len(),
                format!("{} displayed psi matrices matched", psi),
            ),
            (
                x == 2 * MS.len() * BS.len(),
                format!("{} displayed x matrices matched", x),
            ),
        ],
    )
}

fn criterion_3() -> Outcome {
    let mut cfg = config(Suite::Transition);
    cfg.as_ = vec![0, 1, 2, 3, 4];
    cfg.bs = vec![0, 1, 2, 3];
    let r = run_suite(&cfg).expect("transition suite");
    let inv = count_identity(&r, "L L^{-1} = I", Status::Pass);
    from_report(
        &r,
        &[(inv == 3 * 5 * 4, format!("L L^-1 = I at {} points", inv))],
    )
}

fn criterion_4() -> Outcome {
    let r = run_suite(&config(Suite::Casimir)).expect("casimir suite");
    let ip = count_identity(&r, "closed-form eigenvalues equal <l,l+2rho>", Status::Pass);
    let psi = count_identity(&r, "R psi1 = (2m+4) psi1 - 8", Status::Pass)
        + count_identity(&r, "R psi2 = (4m+4) psi2 - 2 psi1", Status::Pass);
    from_report(
        &r,
        &[
            (
                ip == MS.len() * AS.len() * BS.len(),
                format!("eigenvalue agreement at {} points", ip),
            ),
            (
                psi == 2 * MS.len(),
                format!("{} scalar generator identities", psi),
            ),
        ],
    )
}

fn criterion_5() -> Outcome {
    let r = run_suite(&config(Suite::Transform)).expect("transform suite");
    let spot = count_identity(&r, "coefficient is 2(", Status::Pass);
    from_report(
        &r,
        &[(
            spot == 2 * MS.len() * AS.len() * BS.len(),
            format!("{} spot values", spot),
        )],
    )
}

fn criterion_6() -> Outcome {
    let mut cfg = config(Suite::Pde);
    cfg.as_ = vec![0, 1, 2];
    let r = run_suite(&cfg).expect("pde suite");
    // ten degrees with |d| <= 3
    let want = MS.len() * 3 * BS.len() * 10;
    let x = count_identity(&r, "x-coordinates with +C^mu", Status::Pass);
    let psi = count_identity(&r, "matrix PDE in psi-coordinates", Status::Pass);
    from_report(
        &r,
        &[
            (
                x == want,
                format!("x-coordinate PDE at {} of {} points", x, want),
            ),
            (
                psi == want,
                format!("psi-coordinate PDE at {} of {} points", psi, want),
            ),
        ],
    )
}

fn criterion_7() -> Outcome {
    let r = run_suite(&config(Suite::Orthogonality)).expect("orthogonality suite");
    let uniform = count_identity(&r, "independent of k and d", Status::Pass);
    let reported = count_identity(&r, "normalisation constant", Status::Reported);
    let min_pairs = tables()
        .iter()
        .map(|t| kappa_values(t).unwrap().len())
        .min()
        .unwrap_or(0);
    let points = MS.len() * AS.len() * BS.len();
    from_report(
        &r,
        &[
            (
                uniform == points,
                format!("kappa uniform at {} of {} points", uniform, points),
            ),
            (
                reported == points,
                format!("stated constant compared at {} points", reported),
            ),
            (min_pairs >= 6, format!("only {} (d,k) pairs", min_pairs)),
        ],
    )
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for &m in &MS {
        for &a in &AS[1..] {
            for &b in &BS {
                let p = PairParams::new(m, a, b).unwrap();
                let dims = indecomposability_check(&p).unwrap();
                if dims != (1, 1) {
                    bad.push(format!("{}: {:?}", p.tag(), dims));
                }
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("(1, 1) at {} points", MS.len() * (AS.len() - 1) * BS.len())
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_9() -> Outcome {
    let one = PolyMatrix::identity(&Vars::x(), 1);
    let exact = to_f64(region_integral(3, 0, &one).unwrap().get(0, 0));
    let num = region_integral_numeric(3, 0, &one, QUAD_ORDER).unwrap()[0];
    let mass_ok = (exact - 8.0 / 9.0).abs() < 1e-15 && (num - 8.0 / 9.0).abs() < MASS_TOL;
    let mut worst: f64 = 0.0;
    let mut r = Report::new();
    for t in tables() {
        let (rep, w) = numeric_crosscheck(t, QUAD_ORDER, QUAD_TOL).unwrap();
        worst = worst.max(w);
        r.extend(rep);
    }
    let mut out = from_report(&r, &[(mass_ok, format!("region mass {} vs 8/9", num))]);
    out.detail = format!("{}; worst relative deviation {:.2e}", out.detail, worst);
    out
}

fn criterion_10() -> Outcome {
    let r = run_suite(&config(Suite::Xi)).expect("xi suite");
    let mut extra = Vec::new();
    for &m in &MS {
        let xi = bc2_core::casimir::xi_relation_solver(m).unwrap();
        let frozen = [
            (xi.xi11.clone(), q(2 * m, m + 2)),
            (xi.xi01.clone(), q(4, m + 2)),
            (xi.xi12.clone(), q(2, m + 2)),
            (xi.xi02.clone(), q(2, (m + 1) * (m + 2))),
            (xi.xi22.clone(), q(m - 1, m + 1)),
        ];
        extra.push((
            frozen.iter().all(|(a, b)| a == b),
            format!("m={}: derived constants differ", m),
        ));
    }
    for needle in [
        "stated xi22 equals",
        "stated xi12 equals",
        "stated xi02 equals",
        "stated inversion for phi1",
    ] {
        let n = count_identity(&r, needle, Status::Reported);
        extra.push((n == MS.len(), format!("'{}' reported {} times", needle, n)));
    }
    from_report(&r, &extra)
}

fn criterion_11() -> Outcome {
    let mut r = Report::new();
    for (m, a, b) in [(3, 1, 0), (3, 2, 1)] {
        let p = PairParams::new(m, a, b).unwrap();
        r.extend(suites::duality_suite(&p, 2).unwrap());
    }
    r.extend(run_suite(&config(Suite::Duality)).expect("duality suite"));
    let pde = count_identity(&r, "conjugated PDE", Status::Pass);
    from_report(&r, &[(pde > 0, "no conjugated PDE checks ran".into())])
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("krawtchouk identities", criterion_1),
        ("weight matrix", criterion_2),
        ("transition matrices", criterion_3),
        ("radial Casimir", criterion_4),
        ("operator transform", criterion_5),
        ("matrix PDE", criterion_6),
        ("orthogonality", criterion_7),
        ("indecomposability", criterion_8),
        ("numeric cross-check", criterion_9),
        ("xi constants", criterion_10),
        ("duality", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let status = if out.ok { "PASS" } else { "FAIL" };
        if !out.ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {}: {} [{:.1}s]",
            status,
            k + 1,
            name,
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
