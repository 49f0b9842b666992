//! Condition-check reports.

use serde::Serialize;

/// Outcome of a condition check at finite truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The finite table neither confirms nor refutes the asymptotic
    /// condition.
    Inconclusive,
}

/// A named witness constant.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: f64,
}

impl Witness {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Witness {
            name: name.into(),
            value,
        }
    }
}

/// Report of a single condition check.
///
/// When `verdict` is [`Verdict::Holds`] the witnesses re-verify the defining
/// inequality at every index up to the truncation cap; when it is
/// [`Verdict::Fails`], `first_violation` points at the offending index.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub first_violation: Option<usize>,
    /// True whenever the verdict depends on the truncation scale, which is
    /// the case for every asymptotic condition checked on a finite table.
    pub truncation_caveat: bool,
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn witness(&self, name: &str) -> Option<f64> {
        self.witnesses.iter().find(|w| w.name == name).map(|w| w.value)
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}
