//! Pass/fail reports with witnesses.

use std::fmt;

use serde::Serialize;

/// Outcome of a single named condition. A failing check carries the first
/// offending tuple of carrier indices in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check<K> {
    pub kind: K,
    pub witness: Option<Vec<usize>>,
}

impl<K> Check<K> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report<K> {
    pub checks: Vec<Check<K>>,
}

impl<K> Default for Report<K> {
    fn default() -> Self {
        Report { checks: Vec::new() }
    }
}

impl<K: Copy + PartialEq + fmt::Display> Report<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, kind: K, witness: Option<Vec<usize>>) {
        self.checks.push(Check { kind, witness });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check<K>> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, kind: K) -> Option<&Check<K>> {
        self.checks.iter().find(|c| c.kind == kind)
    }

    /// `true` if `kind` was checked and passed.
    pub fn holds(&self, kind: K) -> bool {
        self.get(kind).is_some_and(Check::passed)
    }

    pub fn witness(&self, kind: K) -> Option<&[usize]> {
        self.get(kind).and_then(|c| c.witness.as_deref())
    }

    /// One-line description of the failures, or "ok".
    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|c| format!("{} at {:?}", c.kind, c.witness.as_deref().unwrap_or(&[])))
            .collect();
        if failed.is_empty() {
            "ok".to_string()
        } else {
            failed.join("; ")
        }
    }
}

impl<K: Copy + PartialEq + fmt::Display> fmt::Display for Report<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  pass  {}", c.kind)?,
                Some(w) => writeln!(f, "  FAIL  {}  witness {:?}", c.kind, w)?,
            }
        }
        Ok(())
    }
}

/// Finds the first tuple in `tuples` for which `ok` is false.
pub(crate) fn first_failure<I, F>(tuples: I, mut ok: F) -> Option<Vec<usize>>
where
    I: IntoIterator<Item = Vec<usize>>,
    F: FnMut(&[usize]) -> bool,
{
    tuples.into_iter().find(|t| !ok(t))
}

pub(crate) fn singles(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).map(|x| vec![x])
}

pub(crate) fn pairs(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).flat_map(move |x| (0..n).map(move |y| vec![x, y]))
}
