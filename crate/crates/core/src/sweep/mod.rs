//! Batch checks over enumerated and generated instances.
//!
//! Each registry entry builds its corpus deterministically from the bound and
//! seed, checks every instance independently (in parallel when enabled) and
//! reports counts sorted by instance name. The first failure is shrunk by
//! deleting elements while it still fails.

mod case;
mod checks;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;

pub use case::Case;

/// `6` or `3x3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub first: usize,
    pub second: Option<usize>,
}

impl Bound {
    pub fn size(n: usize) -> Self {
        Bound { first: n, second: None }
    }

    pub fn rect(a: usize, b: usize) -> Self {
        Bound { first: a, second: Some(b) }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.first, self.second.unwrap_or(self.first))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.second {
            Some(b) => write!(f, "{}x{b}", self.first),
            None => write!(f, "{}", self.first),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: None, field: "bound".into(), message: format!("expected N or NxM, got `{s}`") };
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(Bound::rect(num(a)?, num(b)?)),
            None => Ok(Bound::size(num(s)?)),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepConfig {
    pub bound: Option<Bound>,
    pub seed: u64,
    /// overrides the number of random instances
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Skip(String),
    Fail(String),
}

impl Verdict {
    /// Ok(None) passes, Ok(Some) fails with that detail, a failed
    /// precondition skips, any other error fails.
    pub fn from_check(r: Result<Option<String>>) -> Self {
        match r {
            Ok(None) => Verdict::Pass,
            Ok(Some(d)) => Verdict::Fail(d),
            Err(Error::Precondition(m)) => Verdict::Skip(m),
            Err(e) => Verdict::Fail(e.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub verdict: Verdict,
    pub shrunk: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
    /// the smallest failing instance found by element deletion
    pub shrunk: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub kind: &'static str,
    pub id: String,
    pub bound: String,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub first_failure: Option<Failure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn from_outcomes(id: &str, bound: Bound, seed: u64, mut outcomes: Vec<Outcome>) -> Self {
        outcomes.sort_by(|a, b| a.name.cmp(&b.name));
        let count = |f: fn(&Verdict) -> bool| outcomes.iter().filter(|o| f(&o.verdict)).count();
        let first_failure = outcomes.iter().find_map(|o| match &o.verdict {
            Verdict::Fail(d) => Some(Failure { instance: o.name.clone(), detail: d.clone(), shrunk: o.shrunk.clone() }),
            _ => None,
        });
        SweepReport {
            kind: "sweep-report",
            id: id.to_string(),
            bound: bound.to_string(),
            seed,
            instances: outcomes.len(),
            passed: count(|v| *v == Verdict::Pass),
            skipped: count(|v| matches!(v, Verdict::Skip(_))),
            failed: count(|v| matches!(v, Verdict::Fail(_))),
            first_failure,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "sweep {} bound {} seed {}: {} instances, {} passed, {} skipped, {} failed\n",
            self.id, self.bound, self.seed, self.instances, self.passed, self.skipped, self.failed
        );
        if let Some(f) = &self.first_failure {
            s.push_str(&format!("first failure: {}: {}\n", f.instance, f.detail));
            if let Some(m) = &f.shrunk {
                s.push_str("shrunk to:\n");
                s.push_str(m);
                if !m.ends_with('\n') {
                    s.push('\n');
                }
            }
        }
        s
    }
}

/// Check every case, then shrink the first failure in name order.
pub fn run_cases<T: Case>(cases: Vec<(String, T)>, check: impl Fn(&T) -> Verdict + Sync + Send) -> Vec<Outcome> {
    let verdicts = par::map(&cases, |(_, c)| check(c));
    let mut outcomes: Vec<Outcome> = cases
        .iter()
        .zip(verdicts)
        .map(|((name, _), verdict)| Outcome { name: name.clone(), verdict, shrunk: None })
        .collect();
    let first = (0..cases.len())
        .filter(|&i| matches!(outcomes[i].verdict, Verdict::Fail(_)))
        .min_by(|&a, &b| cases[a].0.cmp(&cases[b].0));
    if let Some(i) = first {
        let small = shrink(&cases[i].1, |c| matches!(check(c), Verdict::Fail(_)));
        outcomes[i].shrunk = Some(small.describe());
    }
    outcomes
}

/// Greedy deletion: take the first smaller candidate that still fails.
pub fn shrink<T: Case>(x: &T, fails: impl Fn(&T) -> bool) -> T {
    let mut cur = x.clone();
    'outer: loop {
        for c in cur.smaller() {
            if fails(&c) {
                cur = c;
                continue 'outer;
            }
        }
        return cur;
    }
}

pub struct Sweep {
    pub id: &'static str,
    /// what is checked, in one line
    pub checks: &'static str,
    pub default_bound: Bound,
    run: fn(Bound, &SweepConfig) -> Result<Vec<Outcome>>,
}

pub fn registry() -> &'static [Sweep] {
    checks::REGISTRY
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|s| s.id).collect()
}

pub fn find(id: &str) -> Option<&'static Sweep> {
    registry().iter().find(|s| s.id == id)
}

pub fn run(id: &str, cfg: &SweepConfig) -> Result<SweepReport> {
    let sweep = find(id).ok_or_else(|| {
        Error::Parse { line: None, field: "sweep".into(), message: format!("unknown sweep `{id}`; known: {}", ids().join(", ")) }
    })?;
    let bound = cfg.bound.unwrap_or(sweep.default_bound);
    let outcomes = (sweep.run)(bound, cfg)?;
    log::info!("sweep {id}: {} instances", outcomes.len());
    Ok(SweepReport::from_outcomes(id, bound, cfg.seed, outcomes))
}
