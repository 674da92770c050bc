//! Outcome records produced by the verification pipelines.

use std::fmt::Display;

/// One verified identity. `expected` and `actual` are rendered for reports
/// whether or not the check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// False for informational records that carry no expected target.
    pub compared: bool,
    pub expected: String,
    pub actual: String,
    /// Label of the equation or lemma being reproduced.
    pub anchor: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            passed,
            compared: true,
            expected: expected.into(),
            actual: actual.into(),
            anchor: anchor.into(),
        }
    }

    /// A computed value reported without a target.
    pub fn info(name: impl Into<String>, anchor: impl Into<String>, note: impl Into<String>, actual: impl Into<String>) -> Self {
        Check {
            compared: false,
            ..Check::new(name, anchor, true, note, actual)
        }
    }

    /// Exact comparison of two values that render with `Display`.
    pub fn equal<T: PartialEq + Display>(
        name: impl Into<String>,
        anchor: impl Into<String>,
        expected: &T,
        actual: &T,
    ) -> Self {
        Check::new(name, anchor, expected == actual, expected.to_string(), actual.to_string())
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
