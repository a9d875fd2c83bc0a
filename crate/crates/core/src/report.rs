//! Pass/fail bookkeeping shared by every checker.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// `Reported` marks an identity whose printed form disagrees with what the
/// construction derives; it is recorded but does not count as a failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: String,
    pub identity: String,
    pub params: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {} [{}] {}",
            self.status, self.suite, self.params, self.identity
        )?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(
        &mut self,
        suite: &str,
        params: &str,
        identity: &str,
        status: Status,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            suite: suite.to_string(),
            identity: identity.to_string(),
            params: params.to_string(),
            status,
            detail: detail.into(),
        });
    }

    /// Records `Pass` when `ok`, otherwise `Fail` with the detail computed
    /// lazily.
    pub fn check<F: FnOnce() -> String>(
        &mut self,
        suite: &str,
        params: &str,
        identity: &str,
        ok: bool,
        detail: F,
    ) {
        if ok {
            self.push(suite, params, identity, Status::Pass, "");
        } else {
            self.push(suite, params, identity, Status::Fail, detail());
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c)?;
        }
        write!(
            f,
            "{} pass, {} fail, {} reported",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Reported)
        )
    }
}
