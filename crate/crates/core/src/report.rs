use serde::{Deserialize, Serialize};

/// How many witnesses a single check keeps before it only counts.
pub const MAX_WITNESSES: usize = 8;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub violations: usize,
    pub witnesses: Vec<String>,
}

/// A list of named checks. Validators never fail outright; they fill one of these.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a check so that it shows up as passed even if nothing fails.
    pub fn declare(&mut self, name: &str) {
        if !self.checks.iter().any(|c| c.name == name) {
            self.checks.push(Check {
                name: name.to_string(),
                passed: true,
                violations: 0,
                witnesses: Vec::new(),
            });
        }
    }

    pub fn fail(&mut self, name: &str, witness: impl Into<String>) {
        self.declare(name);
        let check = self.checks.iter_mut().find(|c| c.name == name).unwrap();
        check.passed = false;
        check.violations += 1;
        if check.witnesses.len() < MAX_WITNESSES {
            check.witnesses.push(witness.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            match self.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.passed &= c.passed;
                    x.violations += c.violations;
                    for w in c.witnesses {
                        if x.witnesses.len() < MAX_WITNESSES {
                            x.witnesses.push(w);
                        }
                    }
                }
                None => self.checks.push(c),
            }
        }
    }
}
