//! Seeded verification suites for every identity the engine relies on.
//!
//! Each suite returns a [`SuiteReport`] with a check counter and the first
//! counterexamples found; runs are deterministic for a fixed seed.

pub mod random;
pub mod suites;

use std::fmt;

use serde::Serialize;

pub use suites::{
    set_partitions, verify_bell, verify_bracket_axioms, verify_cocycle, verify_form_factor,
    verify_jacobi, verify_ode, verify_oracle, verify_routes,
};

const MAX_REPORTED: usize = 5;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failed: usize,
    /// The first few counterexamples.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            }
        }
    }

    pub fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Folds another report's counters and messages into this one.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failed += other.failed;
        let prefix = other.suite;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(format!("{prefix}: {f}"));
            }
        }
        self.notes
            .extend(other.notes.into_iter().map(|n| format!("{prefix}: {n}")));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {}/{} checks passed",
            self.suite,
            self.checks - self.failed,
            self.checks
        )?;
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        for failure in &self.failures {
            write!(f, "\n  counterexample: {failure}")?;
        }
        Ok(())
    }
}
