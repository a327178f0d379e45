//! Verdict lists produced by the verification suites.

use serde::Serialize;

use crate::error::Witness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    /// The identity being checked, written out as a formula.
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn from_result(
        id: &str,
        anchor: &str,
        result: std::result::Result<(), Witness>,
    ) -> Self {
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            passed: result.is_ok(),
            witness: result.err(),
        }
    }

    pub fn pass(id: &str, anchor: &str) -> Self {
        Check::from_result(id, anchor, Ok(()))
    }

    pub fn fail(id: &str, anchor: &str, witness: Witness) -> Self {
        Check::from_result(id, anchor, Err(witness))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.get(id).is_some_and(|c| c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// Returns the first failure of `f` over `items` as a witness.
pub fn first_failure<T, I, F>(items: I, mut f: F) -> std::result::Result<(), Witness>
where
    I: IntoIterator<Item = T>,
    F: FnMut(T) -> std::result::Result<(), Witness>,
{
    for item in items {
        f(item)?;
    }
    Ok(())
}
