//! Structured verdicts for theorem-verification runs.
//!
//! Every check produces a [`CheckReport`]: the measured constants, the
//! tolerances they were held to, the worst offending sample and a provenance
//! note for each number. Reports are deterministic given the optimizer seed;
//! all maps are ordered so serialization is stable.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Verdict plus everything needed to audit it.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Measured constants, keyed by name.
    pub constants: BTreeMap<String, f64>,
    /// Tolerances the sub-assertions used, keyed by name.
    pub tolerances: BTreeMap<String, f64>,
    /// Description of the worst sample per sub-assertion.
    pub worst_cases: BTreeMap<String, String>,
    /// Provenance notes: where each number comes from, which routes were
    /// compared, reinterpretations applied.
    pub notes: Vec<String>,
    failed: Vec<String>,
    uncertified: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            verdict: Verdict::Pass,
            constants: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            worst_cases: BTreeMap::new(),
            notes: Vec::new(),
            failed: Vec::new(),
            uncertified: Vec::new(),
        }
    }

    pub fn constant(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.constants.insert(key.into(), value);
        self
    }

    pub fn tolerance(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.tolerances.insert(key.into(), value);
        self
    }

    pub fn worst_case(&mut self, key: impl Into<String>, what: impl Into<String>) -> &mut Self {
        self.worst_cases.insert(key.into(), what.into());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Record one sub-assertion `measured <= bound + tol`. The measured value
    /// and tolerance are stored under `key`.
    pub fn assert_le(&mut self, key: &str, measured: f64, bound: f64, tol: f64) -> bool {
        self.constants.insert(key.to_string(), measured);
        self.tolerances.insert(key.to_string(), tol);
        let ok = measured <= bound + tol && measured.is_finite();
        if !ok {
            self.failed
                .push(format!("{key}: {measured:.6e} exceeds {bound:.6e} + {tol:.1e}"));
        }
        ok
    }

    /// Record a sub-assertion that is true or false outright.
    pub fn assert_that(&mut self, key: &str, ok: bool) -> bool {
        if !ok {
            self.failed.push(format!("{key}: assertion violated"));
        }
        ok
    }

    /// Mark that an optimizer or oracle could not certify its answer. The
    /// report can then at best be inconclusive, never a pass.
    pub fn uncertified(&mut self, what: impl Into<String>) -> &mut Self {
        self.uncertified.push(what.into());
        self
    }

    /// Freeze the verdict: any certified violation fails the check; otherwise
    /// any uncertified sub-result leaves it inconclusive.
    pub fn resolve(mut self) -> Self {
        self.verdict = if !self.failed.is_empty() {
            Verdict::Fail
        } else if !self.uncertified.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        for f in &self.failed {
            self.notes.push(format!("violation: {f}"));
        }
        for u in &self.uncertified {
            self.notes.push(format!("uncertified: {u}"));
        }
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_priority_fail_over_inconclusive() {
        let mut r = CheckReport::new("demo");
        r.assert_le("a", 2.0, 1.0, 0.0);
        r.uncertified("optimizer hit the iteration cap");
        let r = r.resolve();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn uncertified_blocks_pass() {
        let mut r = CheckReport::new("demo");
        r.assert_le("a", 0.5, 1.0, 0.0);
        r.uncertified("lower bound only");
        assert_eq!(r.resolve().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn all_good_passes() {
        let mut r = CheckReport::new("demo");
        r.assert_le("a", 0.5, 1.0, 0.0);
        assert_eq!(r.resolve().verdict, Verdict::Pass);
    }
}
