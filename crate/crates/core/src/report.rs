use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::Scalar;

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub indices: Vec<i64>,
    pub residual: Vec<Scalar>,
}

/// Integer types usable as violation indices.
pub trait Index: Copy {
    fn index(self) -> i64;
}

impl Index for usize {
    fn index(self) -> i64 {
        self as i64
    }
}

impl Index for i64 {
    fn index(self) -> i64 {
        self
    }
}

/// Collected failures of an identity check. Empty means the check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, axiom: &'static str, indices: Vec<i64>, residual: Vec<Scalar>) {
        self.violations.push(Violation { axiom, indices, residual });
    }

    /// Records a violation when `residual` is nonzero.
    pub fn check<I: Index>(&mut self, axiom: &'static str, indices: &[I], residual: Vec<Scalar>) {
        if !crate::linalg::dense_is_zero(&residual) {
            self.push(axiom, indices.iter().map(|i| i.index()).collect(), residual);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn extend(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
    }

    /// Violations sorted by axiom id, then index tuple.
    pub fn sorted(&self) -> Vec<&Violation> {
        let mut v: Vec<&Violation> = self.violations.iter().collect();
        v.sort_by(|a, b| (a.axiom, &a.indices).cmp(&(b.axiom, &b.indices)));
        v
    }

    pub fn axioms(&self) -> BTreeSet<&'static str> {
        self.violations.iter().map(|v| v.axiom).collect()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "OK");
        }
        for v in self.sorted() {
            let idx: Vec<String> = v.indices.iter().map(|i| i.to_string()).collect();
            let res: Vec<String> = v.residual.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{} ({}) residual [{}]", v.axiom, idx.join(","), res.join(","))?;
        }
        Ok(())
    }
}
