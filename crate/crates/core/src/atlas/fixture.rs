//! Published value sets and witness lists, and comparison against computed records.

use std::collections::BTreeSet;

use serde::Deserialize;
use serde_json::{json, Value};

use super::AtlasRecord;
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::funcspace::Family;

const PUBLISHED_JSON: &str = include_str!("../../fixtures/published.json");

#[derive(Clone, Debug, Deserialize)]
pub struct TableFixture {
    pub function: String,
    pub p: u32,
    pub n: u32,
    #[serde(default)]
    pub k: Option<u32>,
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DobFixture {
    /// `1` for `x^10 - x^6 - x^2`, `-1` for `x^10 + x^6 - x^2`
    pub u: i64,
    pub p: u32,
    pub n: u32,
    pub beta: u32,
    pub values: Vec<u32>,
    #[serde(default)]
    pub witnesses: Option<Vec<[String; 2]>>,
    /// a final pair cut off mid-literal: the `c` and a prefix of `b`
    #[serde(default)]
    pub truncated: Option<[String; 2]>,
    /// distinct `c` values only, when the pairs are not listed
    #[serde(default)]
    pub c_values: Option<Vec<String>>,
    #[serde(default)]
    pub pairs_total: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct PublishedFixture {
    pub tables: Vec<TableFixture>,
    pub dob: Vec<DobFixture>,
}

impl PublishedFixture {
    pub fn load() -> PublishedFixture {
        serde_json::from_str(PUBLISHED_JSON).expect("embedded fixture parses")
    }

    pub fn table(&self, family: &str, p: u32, n: u32, k: Option<u32>) -> Option<&TableFixture> {
        self.tables.iter().find(|t| t.function == family && t.p == p && t.n == n && t.k == k)
    }

    pub fn dob(&self, u: i64, n: u32) -> Option<&DobFixture> {
        self.dob.iter().find(|d| d.u == u && d.n == n)
    }
}

/// One comparison inside a [`FixtureDiff`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureDiff {
    pub key: String,
    pub checks: Vec<Check>,
    /// informational lines that do not affect `pass`
    pub notes: Vec<String>,
}

impl FixtureDiff {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), pass, detail: detail.into() });
    }

    pub fn to_json(&self) -> Value {
        json!({
            "key": self.key,
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

fn set_detail<T: Ord + std::fmt::Debug + Clone>(got: &BTreeSet<T>, want: &BTreeSet<T>) -> String {
    let missing: Vec<_> = want.difference(got).cloned().collect();
    let extra: Vec<_> = got.difference(want).cloned().collect();
    if missing.is_empty() && extra.is_empty() {
        format!("{} entries equal", got.len())
    } else {
        format!("missing {missing:?}, unexpected {extra:?}")
    }
}

fn parse_pairs(k: &Field, pairs: &[[String; 2]]) -> Result<BTreeSet<(Elem, Elem)>> {
    pairs.iter().map(|[c, b]| Ok((k.parse_elem(c)?, k.parse_elem(b)?))).collect()
}

fn show(k: &Field, s: &BTreeSet<(Elem, Elem)>) -> BTreeSet<String> {
    s.iter().map(|&(c, b)| format!("({}, {})", k.format(c), k.format(b))).collect()
}

/// Whether `got` equals the listed pairs plus exactly one pair matching the truncated entry.
fn witness_match(k: &Field, got: &BTreeSet<(Elem, Elem)>, listed: &BTreeSet<(Elem, Elem)>, cut: Option<(Elem, &str)>) -> (bool, String) {
    let mut rest: BTreeSet<(Elem, Elem)> = got.difference(listed).copied().collect();
    let missing: BTreeSet<(Elem, Elem)> = listed.difference(got).copied().collect();
    let mut completed = None;
    if let Some((c, prefix)) = cut {
        let hits: Vec<_> = rest.iter().filter(|&&(rc, rb)| rc == c && k.format(rb).starts_with(prefix)).copied().collect();
        if hits.len() == 1 {
            rest.remove(&hits[0]);
            completed = Some(hits[0]);
        }
    }
    let ok = missing.is_empty() && rest.is_empty() && (cut.is_none() || completed.is_some());
    let mut detail = if missing.is_empty() && rest.is_empty() {
        format!("{} pairs equal", got.len())
    } else {
        format!("missing {:?}, unexpected {:?}", show(k, &missing), show(k, &rest))
    };
    if let Some((c, b)) = completed {
        detail.push_str(&format!("; truncated pair completes to ({}, {})", k.format(c), k.format(b)));
    } else if cut.is_some() {
        detail.push_str("; truncated pair has no unique completion");
    }
    (ok, detail)
}

/// Compares a computed record with the matching published entry.
pub fn diff_fixture(record: &AtlasRecord, fixture: &PublishedFixture) -> Result<FixtureDiff> {
    let k = &record.field;
    let fam = record.key.family;
    let key = format!("{} p={} n={}{}", fam.name(), k.p(), k.n(), fam.k().map(|v| format!(" k={v}")).unwrap_or_default());
    let mut diff = FixtureDiff { key: key.clone(), checks: Vec::new(), notes: Vec::new() };
    let got: BTreeSet<u32> = record.value_set.iter().copied().collect();

    let (want_values, dob) = match fam {
        Family::Dob { .. } => {
            let u = record
                .key
                .dob_sign(k)
                .ok_or_else(|| Error::InvalidParameter(format!("no fixture for {key}")))?;
            let d = fixture.dob(u, k.n()).ok_or_else(|| Error::InvalidParameter(format!("no fixture for {key}")))?;
            (d.values.clone(), Some(d))
        }
        _ => {
            let t = fixture
                .table(fam.name(), k.p(), k.n(), fam.k())
                .ok_or_else(|| Error::InvalidParameter(format!("no fixture for {key}")))?;
            (t.values.clone(), None)
        }
    };
    let want: BTreeSet<u32> = want_values.into_iter().collect();
    diff.check("value_set", got == want, set_detail(&got, &want));
    let all_a: BTreeSet<u32> = record.value_set_all_a.iter().copied().collect();
    diff.notes.push(format!(
        "value set over every a != 0 {} the published set",
        if all_a == want { "also equals".to_string() } else { format!("differs from (max {})", record.global_max_all_a) }
    ));
    if let Some(all) = &record.value_set_all_cells {
        let all: BTreeSet<u32> = all.iter().copied().collect();
        diff.notes.push(format!(
            "value set over all cells {} the published set",
            if all == want { "also equals" } else { "differs from" }
        ));
    }

    let Some(d) = dob else { return Ok(diff) };
    diff.check("uniformity", record.global_max == d.beta, format!("computed {}, published {}", record.global_max, d.beta));
    let row: BTreeSet<(Elem, Elem)> = record.witnesses.iter().copied().collect();
    let bct: BTreeSet<(Elem, Elem)> = record.col_max_witnesses.iter().copied().collect();
    let ddt: BTreeSet<(Elem, Elem)> = record.ddt_witnesses.iter().copied().collect();
    let readings = [("cB(1, b)", &row), ("max_a c-BCT", &bct), ("c-DDT", &ddt)];
    if let Some(pairs) = &d.witnesses {
        let listed = parse_pairs(k, pairs)?;
        let cut = match &d.truncated {
            Some([c, prefix]) => Some((k.parse_elem(c)?, prefix.as_str())),
            None => None,
        };
        let mut matching = Vec::new();
        for (name, set) in readings {
            let (ok, detail) = witness_match(k, set, &listed, cut);
            diff.notes.push(format!("{name} reading: {detail}"));
            if ok {
                matching.push(name);
            }
        }
        diff.check(
            "witnesses",
            !matching.is_empty(),
            if matching.is_empty() { "no reading matches".to_string() } else { format!("matching reading: {}", matching.join(", ")) },
        );
    }
    if let Some(cs) = &d.c_values {
        let want_c: BTreeSet<String> =
            cs.iter().map(|c| k.parse_elem(c).map(|e| k.format(e))).collect::<Result<_>>()?;
        let mut matching = Vec::new();
        for (name, set) in readings {
            let got_c: BTreeSet<String> = set.iter().map(|&(c, _)| k.format(c)).collect();
            let total_ok = d.pairs_total.map_or(true, |t| t == set.len());
            diff.notes.push(format!(
                "{name} reading: {} pairs, c values: {}",
                set.len(),
                set_detail(&got_c, &want_c)
            ));
            if got_c == want_c && total_ok {
                matching.push(name);
            }
        }
        diff.check(
            "witness_c_values",
            !matching.is_empty(),
            if matching.is_empty() { "no reading matches".to_string() } else { format!("matching reading: {}", matching.join(", ")) },
        );
    }
    Ok(diff)
}
