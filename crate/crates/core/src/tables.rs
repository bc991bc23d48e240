//! Square count tables shared by the c-DDT and c-BCT code.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::json;

use crate::ffield::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    Ddt,
    Bct,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Ddt => "DDT",
            TableKind::Bct => "BCT",
        }
    }
}

/// A `q x q` table of counts; rows are indexed by `a`, columns by `b`.
#[derive(Clone)]
pub struct CountTable {
    pub kind: TableKind,
    pub c: Elem,
    pub function: String,
    field: Arc<Field>,
    entries: Vec<u32>,
}

impl std::fmt::Debug for CountTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CountTable")
            .field("kind", &self.kind)
            .field("c", &self.c)
            .field("function", &self.function)
            .field("q", &self.q())
            .finish()
    }
}

impl PartialEq for CountTable {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.c == other.c && self.field == other.field && self.entries == other.entries
    }
}

impl CountTable {
    pub fn new(kind: TableKind, c: Elem, function: impl Into<String>, field: &Arc<Field>, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), field.size() * field.size(), "entry count must be q^2");
        CountTable { kind, c, function: function.into(), field: field.clone(), entries }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.size()
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> u32 {
        self.entries[a.index() * self.q() + b.index()]
    }

    pub fn row(&self, a: Elem) -> &[u32] {
        let q = self.q();
        &self.entries[a.index() * q..(a.index() + 1) * q]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Cells `(a, b, entry)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (Elem, Elem, u32)> + '_ {
        let q = self.q();
        self.entries.iter().enumerate().map(move |(i, &v)| (Elem((i / q) as u32), Elem((i % q) as u32), v))
    }

    /// Largest entry among cells accepted by `keep`.
    pub fn max_where(&self, keep: impl Fn(Elem, Elem) -> bool) -> u32 {
        self.cells().filter(|&(a, b, _)| keep(a, b)).map(|(_, _, v)| v).max().unwrap_or(0)
    }

    /// Cells accepted by `keep` whose entry equals `value`.
    pub fn cells_equal(&self, value: u32, keep: impl Fn(Elem, Elem) -> bool) -> Vec<(Elem, Elem)> {
        self.cells().filter(|&(a, b, v)| v == value && keep(a, b)).map(|(a, b, _)| (a, b)).collect()
    }

    /// Distinct positive entries among cells accepted by `keep`, ascending.
    pub fn value_set(&self, keep: impl Fn(Elem, Elem) -> bool) -> Vec<u32> {
        let mut seen: Vec<u32> =
            self.cells().filter(|&(a, b, v)| v > 0 && keep(a, b)).map(|(_, _, v)| v).collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = self.q();
        let rows: Vec<&[u32]> = self.entries.chunks(q).collect();
        json!({
            "kind": self.kind.name(),
            "c": self.field.format(self.c),
            "function": self.function,
            "field": self.field.spec(),
            "entries": rows,
        })
    }

    /// One line per row `a`; the first column is the row index.
    pub fn to_csv(&self) -> String {
        let q = self.q();
        let mut out = String::from("a");
        for b in 0..q {
            write!(out, ",{b}").unwrap();
        }
        out.push('\n');
        for (a, row) in self.entries.chunks(q).enumerate() {
            write!(out, "{a}").unwrap();
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}
