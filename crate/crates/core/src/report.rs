//! Pass/fail records produced by the verification suites.

use alloc::string::String;
use alloc::vec::Vec;

/// One checked identity or value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub key: String,
    pub pass: bool,
    /// Lowest (graded-lex) exponent where the two sides differ.
    pub first_mismatch: Option<Vec<u32>>,
    pub detail: String,
}

impl Case {
    pub fn new(key: String, pass: bool, detail: String) -> Self {
        Case {
            key,
            pass,
            first_mismatch: None,
            detail,
        }
    }

    pub fn series(key: String, first_mismatch: Option<Vec<u32>>) -> Self {
        Case {
            key,
            pass: first_mismatch.is_none(),
            first_mismatch,
            detail: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: String::from(suite),
            cases: Vec::new(),
        }
    }

    pub fn push(&mut self, case: Case) {
        self.cases.push(case);
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}
