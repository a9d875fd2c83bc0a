//! Runs verification suites over a parameter grid in parallel; the merged
//! report keeps the job order of the configuration.

use bc2_core::lie::PairParams;
use bc2_core::orthogonality::orthogonality_suite;
use bc2_core::report::{Report, Status};
use bc2_core::suites::{self, Scope, Suite};
use rayon::prelude::*;

use crate::error::CliError;
use crate::numeric;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub ms: Vec<i64>,
    pub as_: Vec<i64>,
    pub bs: Vec<i64>,
    pub dmax: i64,
    /// Degree bound of the PDE suite for `a <= 2`; larger `a` use `dmax`.
    pub pde_dmax: i64,
    pub suites: Vec<Suite>,
    pub numeric: bool,
    pub quadrature_order: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            ms: vec![3, 4, 5],
            as_: vec![0, 1, 2, 3],
            bs: vec![0, 1, 2],
            dmax: 2,
            pde_dmax: 3,
            suites: Suite::ALL.to_vec(),
            numeric: false,
            quadrature_order: numeric::DEFAULT_ORDER,
        }
    }
}

#[derive(Clone, Debug)]
enum Job {
    Global(Suite),
    PerM(Suite, i64),
    PerParams(Suite, PairParams),
    ScalarOperator(i64),
    Integration(i64),
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<Vec<PairParams>, CliError> {
        if self.ms.is_empty() || self.as_.is_empty() || self.bs.is_empty() {
            return Err(CliError::Invalid(
                "parameter grids must be non-empty".into(),
            ));
        }
        if self.dmax < 0 || self.pde_dmax < 0 {
            return Err(CliError::Invalid(
                "degree bounds must be non-negative".into(),
            ));
        }
        let mut out = Vec::new();
        for &m in &self.ms {
            for &a in &self.as_ {
                for &b in &self.bs {
                    out.push(PairParams::new(m, a, b)?);
                }
            }
        }
        Ok(out)
    }

    fn jobs(&self, grid: &[PairParams]) -> Vec<Job> {
        let mut ms: Vec<i64> = grid.iter().map(|p| p.m).collect();
        ms.sort_unstable();
        ms.dedup();
        let mut jobs = Vec::new();
        for &suite in &self.suites {
            match suite.scope() {
                Scope::Global => jobs.push(Job::Global(suite)),
                Scope::PerM => jobs.extend(ms.iter().map(|&m| Job::PerM(suite, m))),
                Scope::PerParams => {
                    if suite == Suite::Casimir {
                        jobs.extend(ms.iter().map(|&m| Job::ScalarOperator(m)));
                    }
                    if suite == Suite::Orthogonality {
                        jobs.extend(ms.iter().map(|&m| Job::Integration(m)));
                    }
                    for p in grid {
                        // the dual regime only carries the duality checks
                        if p.is_canonical() || suite == Suite::Duality {
                            jobs.push(Job::PerParams(suite, *p));
                        }
                    }
                }
            }
        }
        jobs
    }

    fn run_job(&self, job: &Job) -> Result<Report, CliError> {
        Ok(match job {
            Job::Global(s) => {
                suites::run_params(*s, &PairParams::new(3, 0, 0)?, self.dmax, self.pde_dmax)?
            }
            Job::PerM(s, m) => {
                suites::run_params(*s, &PairParams::new(*m, 0, 0)?, self.dmax, self.pde_dmax)?
            }
            Job::ScalarOperator(m) => {
                suites::scalar_operator_suite(*m, self.pde_dmax.max(self.dmax))?
            }
            Job::Integration(m) => bc2_core::orthogonality::integration_check(*m)?,
            Job::PerParams(Suite::Orthogonality, p) => {
                let (mut r, table, _) = orthogonality_suite(p, self.dmax)?;
                if self.numeric {
                    r.extend(
                        numeric::numeric_crosscheck(
                            &table,
                            self.quadrature_order,
                            numeric::REL_TOL,
                        )?
                        .0,
                    );
                }
                r
            }
            Job::PerParams(Suite::Pde, p) => {
                let d = if p.a <= 2 { self.pde_dmax } else { self.dmax };
                suites::pde_suite(p, d)?
            }
            Job::PerParams(s, p) => suites::run_params(*s, p, self.dmax, self.pde_dmax)?,
        })
    }

    fn job_name(job: &Job) -> (String, String) {
        match job {
            Job::Global(s) => (s.name().into(), String::new()),
            Job::PerM(s, m) => (s.name().into(), format!("m={}", m)),
            Job::ScalarOperator(m) => ("casimir".into(), format!("m={}", m)),
            Job::Integration(m) => ("orthogonality".into(), format!("m={}", m)),
            Job::PerParams(s, p) => (s.name().into(), p.tag()),
        }
    }
}

/// Runs every job; an error inside a job is recorded as a failing check.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, CliError> {
    let grid = config.validate()?;
    let jobs = config.jobs(&grid);
    let results: Vec<Report> = jobs
        .par_iter()
        .map(|job| match config.run_job(job) {
            Ok(r) => r,
            Err(e) => {
                let (suite, tag) = SuiteConfig::job_name(job);
                let mut r = Report::new();
                r.push(
                    &suite,
                    &tag,
                    "suite ran to completion",
                    Status::Fail,
                    e.to_string(),
                );
                r
            }
        })
        .collect();
    let mut out = Report::new();
    for r in results {
        out.extend(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forbidden_regime_is_rejected() {
        let cfg = SuiteConfig {
            ms: vec![3],
            as_: vec![2],
            bs: vec![-1],
            ..SuiteConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn small_grid_runs() {
        let cfg = SuiteConfig {
            ms: vec![3],
            as_: vec![1],
            bs: vec![0],
            dmax: 1,
            pde_dmax: 1,
            suites: vec![Suite::Transition, Suite::Pde, Suite::Xi],
            ..SuiteConfig::default()
        };
        let r = run_suite(&cfg).unwrap();
        assert!(!r.has_failures(), "{}", r);
        assert!(r.count(Status::Reported) > 0);
    }
}
