//! Pass/fail reports for the verification routines.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// An ordered list of named checks. Renders one line per check followed by
/// `PASS` or `FAIL`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "OK" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{}: {status}", c.name)?;
            } else {
                writeln!(f, "{}: {status} ({})", c.name, c.detail)?;
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let mut r = Report::new();
        r.push("rank", true, "12 of 12");
        r.push("closure", true, "");
        assert_eq!(r.to_string(), "rank: OK (12 of 12)\nclosure: OK\nPASS");
        r.push("assoc", false, "x");
        assert!(!r.passed());
        assert!(r.to_string().ends_with("assoc: FAIL (x)\nFAIL"));
        assert_eq!(Report::new().to_string(), "PASS");
    }
}
