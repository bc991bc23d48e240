//! Structured pass/fail reports for theorem instances.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    pub fn new(theorem: impl Into<String>) -> Self {
        TheoremVerdict {
            theorem: theorem.into(),
            params: BTreeMap::new(),
            pass: true,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Marks the verdict failed and records why.
    pub fn fail(&mut self, why: impl Into<String>) {
        self.pass = false;
        self.witnesses.push(why.into());
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}
