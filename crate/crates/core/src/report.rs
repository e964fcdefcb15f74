//! Validation reports shared by the algebra, group and representation validators.

use std::fmt;

/// One violated identity together with the basis indices or group elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

/// A named check and whether it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, rule: &str, witness: impl Into<String>) {
        self.violations.push(Violation { rule: rule.to_string(), witness: witness.into() });
    }

    /// Records a check named `name`; it passes iff no violation tagged `name` was added since `mark`.
    pub fn close_check(&mut self, name: &str, mark: usize) {
        let passed = self.violations[mark..].iter().all(|v| v.rule != name);
        self.checks.push(Check { name: name.to_string(), passed });
    }

    pub fn mark(&self) -> usize {
        self.violations.len()
    }

    pub fn violations_of<'a>(&'a self, rule: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.rule == rule)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok ({} checks)", self.checks.len());
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.rule, v.witness)?;
        }
        Ok(())
    }
}
