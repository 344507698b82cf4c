//! Line-oriented check reports: `PASS|FAIL <check> <witness>`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub check: String,
    pub passed: bool,
    pub witness: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        if self.witness.is_empty() {
            write!(f, "{verdict} {}", self.check)
        } else {
            write!(f, "{verdict} {} {}", self.check, self.witness)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: impl Into<String>, passed: bool, witness: impl Into<String>) {
        self.lines.push(CheckLine {
            check: check.into(),
            passed,
            witness: witness.into(),
        });
    }

    /// Records a check that passes unless `failure` holds a witness.
    pub fn record(&mut self, check: impl Into<String>, failure: Option<String>, ok_note: impl Into<String>) {
        match failure {
            Some(w) => self.push(check, false, w),
            None => self.push(check, true, ok_note),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.lines.iter().find(|l| !l.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;

    #[test]
    fn formats_lines() {
        let mut r = Report::new();
        r.push("axiom1", true, "");
        r.record("axiom3", Some("i=2".to_string()), "");
        assert_eq!(format!("{r}"), "PASS axiom1\nFAIL axiom3 i=2\n");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.first_failure().map(|l| l.check.as_str()), Some("axiom3"));
    }
}
