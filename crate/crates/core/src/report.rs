//! Pass/fail records produced by the verification sweeps.

use alloc::string::String;
use alloc::vec::Vec;

/// One disagreement: at index `n`, `method_a` produced `value_a` while
/// `method_b` produced `value_b`. Values are exact fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub n: u64,
    pub method_a: String,
    pub value_a: String,
    pub method_b: String,
    pub value_b: String,
}

/// Outcome of a sweep over the index range `lo..=hi`.
///
/// `checked` counts indices actually examined; it equals `hi - lo + 1`
/// unless the sweep stopped early. `elapsed_ms` is filled in by callers
/// that can read a clock.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub range: (u64, u64),
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, lo: u64, hi: u64) -> Self {
        Self {
            subject: subject.into(),
            range: (lo, hi),
            checked: 0,
            failures: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record_failure(
        &mut self,
        n: u64,
        method_a: impl Into<String>,
        value_a: impl Into<String>,
        method_b: impl Into<String>,
        value_b: impl Into<String>,
    ) {
        self.failures.push(Failure {
            n,
            method_a: method_a.into(),
            value_a: value_a.into(),
            method_b: method_b.into(),
            value_b: value_b.into(),
        });
    }

    /// Folds a report over an adjacent or overlapping range into this one.
    pub fn merge(&mut self, other: VerificationReport) {
        self.range = (self.range.0.min(other.range.0), self.range.1.max(other.range.1));
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|f| f.n);
        self.elapsed_ms = self.elapsed_ms.max(other.elapsed_ms);
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}
