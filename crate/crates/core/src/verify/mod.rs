//! Named verification suites producing pass/fail checks.

mod suites;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::g12;

pub use suites::{CapacitySuite, EavesdropSuite, OptimizeSuite, StateDepSuite, TeleportSuite, UniversalSuite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `|value − expected| ≤ tolerance`.
    Near,
    /// `value ≤ expected + tolerance`.
    AtMost,
    /// `value ≥ expected − tolerance`.
    AtLeast,
    /// `value > expected`; the tolerance is ignored.
    Exceeds,
}

impl Relation {
    fn holds(self, value: f64, expected: f64, tol: f64) -> bool {
        match self {
            Relation::Near => (value - expected).abs() <= tol,
            Relation::AtMost => value <= expected + tol,
            Relation::AtLeast => value >= expected - tol,
            Relation::Exceeds => value > expected,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Near => "~",
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Exceeds => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: value={} expected {} {} tol={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            g12(self.value),
            self.relation.symbol(),
            g12(self.expected),
            g12(self.tolerance)
        )?;
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Seed, sample count and per-check tolerance overrides.
#[derive(Debug)]
pub struct VerifyContext {
    pub seed: u64,
    pub shots: u64,
    tolerances: BTreeMap<String, f64>,
    used: Mutex<BTreeSet<String>>,
}

impl Default for VerifyContext {
    fn default() -> Self {
        Self::new(0, 100_000)
    }
}

impl VerifyContext {
    pub fn new(seed: u64, shots: u64) -> Self {
        Self { seed, shots, tolerances: BTreeMap::new(), used: Mutex::new(BTreeSet::new()) }
    }

    pub fn with_tolerance(mut self, name: impl Into<String>, value: f64) -> Self {
        self.tolerances.insert(name.into(), value);
        self
    }

    pub fn check(&self, name: &str, value: f64, expected: f64, default_tol: f64, relation: Relation) -> Check {
        let tolerance = match self.tolerances.get(name) {
            Some(&t) => {
                self.used.lock().expect("tolerance log").insert(name.to_string());
                t
            }
            None => default_tol,
        };
        Check {
            name: name.to_string(),
            value,
            expected,
            tolerance,
            relation,
            pass: relation.holds(value, expected, tolerance),
            note: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(&self, name: &str, expected: f64, err: &Error) -> Check {
        Check {
            name: name.to_string(),
            value: f64::NAN,
            expected,
            tolerance: self.tolerances.get(name).copied().unwrap_or(0.0),
            relation: Relation::Near,
            pass: false,
            note: Some(err.to_string()),
        }
    }

    /// Overrides that matched no check so far.
    pub fn unused_tolerances(&self) -> Vec<String> {
        let used = self.used.lock().expect("tolerance log");
        self.tolerances.keys().filter(|k| !used.contains(*k)).cloned().collect()
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, ctx: &VerifyContext) -> Result<Vec<Check>>;
}

impl fmt::Debug for dyn Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Suite({})", self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out.push_str(&format!("{}: {} checks, {} failed\n", self.suite, self.checks.len(), self.failures()));
        out
    }
}

pub const ALL: &str = "all";

#[derive(Debug, Default)]
pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        Self::new()
            .with(Box::new(UniversalSuite))
            .with(Box::new(TeleportSuite))
            .with(Box::new(StateDepSuite))
            .with(Box::new(EavesdropSuite))
            .with(Box::new(OptimizeSuite))
            .with(Box::new(CapacitySuite))
    }

    /// Adds a suite, replacing any with the same name.
    pub fn with(mut self, suite: Box<dyn Suite>) -> Self {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
        self
    }

    /// Registered names plus `all`.
    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).chain([ALL]).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Suite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::Unknown { kind: "suite", name: name.into() })
    }

    /// Runs one suite, or every suite in registration order for `all`.
    pub fn run(&self, name: &str, ctx: &VerifyContext) -> Result<VerifyReport> {
        let checks = if name == ALL {
            let mut all = Vec::new();
            for s in &self.suites {
                all.extend(s.run(ctx)?);
            }
            all
        } else {
            self.get(name)?.run(ctx)?
        };
        let unused = ctx.unused_tolerances();
        if let Some(first) = unused.into_iter().next() {
            return Err(Error::Unknown { kind: "tolerance override", name: first });
        }
        Ok(VerifyReport { suite: name.to_string(), checks })
    }
}
