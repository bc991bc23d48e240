//! Value sets and witness lists of c-BCT entries over every multiplier `c`,
//! with the published fixtures and a diffing engine.

mod fixture;

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::boomtables::c_bct_system_seq;
use crate::difftables::c_ddt;
use crate::error::Result;
use crate::ffield::{Elem, Field};
use crate::funcspace::{Family, FunctionTable};

pub use fixture::{diff_fixture, Check, DobFixture, FixtureDiff, PublishedFixture, TableFixture};

/// Elementary operations above which a computation belongs to the slow tier.
pub const SLOW_THRESHOLD: u128 = 1_000_000_000;

/// Rough operation count for an atlas run: `(q - 2) q^3`.
pub fn atlas_cost(field: &Field) -> u128 {
    let q = field.order() as u128;
    q.saturating_sub(2) * q * q * q
}

pub fn is_slow(field: &Field) -> bool {
    atlas_cost(field) > SLOW_THRESHOLD
}

/// Which function an atlas record describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasKey {
    pub family: Family,
    pub p: u32,
    pub n: u32,
}

impl AtlasKey {
    pub fn new(family: Family, field: &Field) -> Self {
        AtlasKey { family, p: field.p(), n: field.n() }
    }

    /// `u` as a signed integer for the dob family (`1` or `-1`), if it is one of those.
    pub fn dob_sign(&self, field: &Field) -> Option<i64> {
        match self.family {
            Family::Dob { u } if u == Elem::ONE => Some(1),
            Family::Dob { u } if u == field.neg(Elem::ONE) => Some(-1),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AtlasRecord {
    pub key: AtlasKey,
    pub field: Arc<Field>,
    pub function: String,
    /// distinct positive entries `cB(1, b)` over `c != 0, 1` and `b != 0`
    pub value_set: Vec<u32>,
    pub global_max: u32,
    /// `(c, b)` with `cB(1, b) = global_max`, `b != 0`
    pub witnesses: Vec<(Elem, Elem)>,
    /// distinct positive entries over `c != 0, 1` and `a, b != 0`
    pub value_set_all_a: Vec<u32>,
    pub global_max_all_a: u32,
    /// `(c, b)` with `max_{a != 0} cB(a, b) = global_max`, `b != 0`
    pub col_max_witnesses: Vec<(Elem, Elem)>,
    /// `(c, b)` with `c-DDT(a, b) = global_max` for some `a`
    pub ddt_witnesses: Vec<(Elem, Elem)>,
    /// distinct positive entries over every cell, when requested
    pub value_set_all_cells: Option<Vec<u32>>,
    /// `beta_{F,c}` over `a, b != 0` for each `c`
    pub per_c_beta: Vec<(Elem, u32)>,
    pub elapsed: Duration,
}

struct PerC {
    c: Elem,
    values: BTreeSet<u32>,
    all_values: BTreeSet<u32>,
    /// `max_{a != 0} cB(a, b)` by `b`
    col_max: Vec<u32>,
    row_one: Vec<u32>,
    /// distinct c-DDT entries in column `b`
    ddt_cols: Vec<Vec<u32>>,
}

fn per_c(f: &FunctionTable, c: Elem, include_zero: bool) -> Result<PerC> {
    let k = f.field();
    let q = k.size();
    let t = c_bct_system_seq(f, c)?;
    let mut values = BTreeSet::new();
    let mut all_values = BTreeSet::new();
    let mut col_max = vec![0u32; q];
    for (a, b, e) in t.cells() {
        if e == 0 {
            continue;
        }
        if include_zero {
            all_values.insert(e);
        }
        if !a.is_zero() && !b.is_zero() {
            values.insert(e);
            let m = &mut col_max[b.index()];
            *m = (*m).max(e);
        }
    }
    let ddt = c_ddt(f, c);
    let mut ddt_cols = vec![Vec::new(); q];
    for (_, b, e) in ddt.cells() {
        ddt_cols[b.index()].push(e);
    }
    for col in ddt_cols.iter_mut() {
        col.sort_unstable();
        col.dedup();
    }
    let row_one = t.row(Elem::ONE).to_vec();
    Ok(PerC { c, values, all_values, col_max, row_one, ddt_cols })
}

/// Aggregates the c-BCT of `family` over every `c != 0, 1`.
pub fn compute_atlas(family: Family, field: &Arc<Field>, include_zero: bool) -> Result<AtlasRecord> {
    compute_atlas_with_progress(family, field, include_zero, &|_, _| {})
}

/// As [`compute_atlas`], calling `progress(done, total)` after each multiplier.
pub fn compute_atlas_with_progress(
    family: Family,
    field: &Arc<Field>,
    include_zero: bool,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<AtlasRecord> {
    let start = Instant::now();
    let f = family.build(field)?;
    let cs: Vec<Elem> = field.nonzero().filter(|&c| c != Elem::ONE).collect();
    let done = AtomicUsize::new(0);
    let total = cs.len();
    let mut parts: Vec<PerC> = cs
        .par_iter()
        .map(|&c| {
            let r = per_c(&f, c, include_zero);
            progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
            r
        })
        .collect::<Result<_>>()?;
    parts.sort_by_key(|p| p.c);

    let mut value_set = BTreeSet::new();
    let mut value_set_all_a = BTreeSet::new();
    let mut all_cells = BTreeSet::new();
    let mut per_c_beta = Vec::with_capacity(parts.len());
    for p in &parts {
        value_set.extend(p.row_one.iter().skip(1).copied().filter(|&e| e > 0));
        value_set_all_a.extend(&p.values);
        all_cells.extend(&p.all_values);
        per_c_beta.push((p.c, p.values.iter().next_back().copied().unwrap_or(0)));
    }
    let global_max = value_set.iter().next_back().copied().unwrap_or(0);
    let global_max_all_a = value_set_all_a.iter().next_back().copied().unwrap_or(0);
    let mut witnesses = Vec::new();
    let mut col_max_witnesses = Vec::new();
    let mut ddt_witnesses = Vec::new();
    for p in &parts {
        for b in field.elements() {
            if !b.is_zero() && global_max > 0 {
                if p.row_one[b.index()] == global_max {
                    witnesses.push((p.c, b));
                }
                if p.col_max[b.index()] == global_max {
                    col_max_witnesses.push((p.c, b));
                }
            }
            if p.ddt_cols[b.index()].binary_search(&global_max).is_ok() {
                ddt_witnesses.push((p.c, b));
            }
        }
    }
    Ok(AtlasRecord {
        key: AtlasKey::new(family, field),
        field: field.clone(),
        function: f.label().to_string(),
        value_set: value_set.into_iter().collect(),
        global_max,
        witnesses,
        value_set_all_a: value_set_all_a.into_iter().collect(),
        global_max_all_a,
        col_max_witnesses,
        ddt_witnesses,
        value_set_all_cells: include_zero.then(|| all_cells.into_iter().collect()),
        per_c_beta,
        elapsed: start.elapsed(),
    })
}

fn pairs_json(k: &Field, pairs: &[(Elem, Elem)]) -> Value {
    Value::Array(pairs.iter().map(|&(c, b)| json!([k.format(c), k.format(b)])).collect())
}

/// Output formats for [`AtlasRecord::export`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
    Pretty,
}

impl std::str::FromStr for ExportFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            "pretty" => Ok(ExportFormat::Pretty),
            other => Err(crate::Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

impl AtlasRecord {
    /// Deterministic JSON (sorted keys, no timing).
    pub fn to_json(&self) -> Value {
        let k = &self.field;
        let mut v = json!({
            "function": self.function,
            "family": self.key.family.name(),
            "field": { "p": k.p(), "n": k.n(), "modulus": k.spec().modulus },
            "value_set": self.value_set,
            "global_max": self.global_max,
            "witnesses": pairs_json(k, &self.witnesses),
            "value_set_all_a": self.value_set_all_a,
            "global_max_all_a": self.global_max_all_a,
            "col_max_witnesses": pairs_json(k, &self.col_max_witnesses),
            "ddt_witnesses": pairs_json(k, &self.ddt_witnesses),
            "per_c_beta": self.per_c_beta.iter().map(|&(c, b)| json!([k.format(c), b])).collect::<Vec<_>>(),
        });
        if let Some(kk) = self.key.family.k() {
            v["k"] = json!(kk);
        }
        if let Family::Dob { u } = self.key.family {
            v["u"] = json!(k.format(u));
        }
        if let Some(all) = &self.value_set_all_cells {
            v["value_set_all_cells"] = json!(all);
        }
        v
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => serde_json::to_string(&self.to_json()).expect("records serialize") + "\n",
            ExportFormat::Csv => self.to_csv(),
            ExportFormat::Pretty => self.to_pretty(),
        }
    }

    fn to_csv(&self) -> String {
        let k = &self.field;
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(";");
        let mut out = String::from("kind,c,b,value\n");
        for &v in &self.value_set {
            out.push_str(&format!("value,,,{v}\n"));
        }
        out.push_str(&format!("global_max,,,{}\n", self.global_max));
        for &(c, b) in &self.witnesses {
            out.push_str(&format!("witness,{},{},{}\n", k.format(c), k.format(b), self.global_max));
        }
        for &(c, b) in &self.col_max_witnesses {
            out.push_str(&format!("col_max_witness,{},{},{}\n", k.format(c), k.format(b), self.global_max));
        }
        for &(c, b) in &self.ddt_witnesses {
            out.push_str(&format!("ddt_witness,{},{},{}\n", k.format(c), k.format(b), self.global_max));
        }
        out.push_str(&format!("value_set_all_a,,,{}\n", join(&self.value_set_all_a)));
        if let Some(all) = &self.value_set_all_cells {
            out.push_str(&format!("value_set_all_cells,,,{}\n", join(all)));
        }
        out
    }

    fn to_pretty(&self) -> String {
        let k = &self.field;
        let mut out = format!("{} over F_{}^{}", self.function, k.p(), k.n());
        if let Some(kk) = self.key.family.k() {
            out.push_str(&format!(" (k = {kk})"));
        }
        out.push('\n');
        out.push_str(&format!("  value set: {:?}\n", self.value_set));
        out.push_str(&format!("  c-boomerang uniformity: {}\n", self.global_max));
        if self.value_set_all_a != self.value_set {
            out.push_str(&format!(
                "  over every a != 0: value set {:?}, maximum {}\n",
                self.value_set_all_a, self.global_max_all_a
            ));
        }
        out.push_str(&format!(
            "  witness pairs (c, b): {} with cB(1, b) = beta, {} with max_a cB(a, b) = beta\n",
            self.witnesses.len(),
            self.col_max_witnesses.len()
        ));
        for &(c, b) in self.witnesses.iter().take(12) {
            out.push_str(&format!("    ({}, {})\n", k.format(c), k.format(b)));
        }
        if self.witnesses.len() > 12 {
            out.push_str("    ...\n");
        }
        if let Some(all) = &self.value_set_all_cells {
            out.push_str(&format!("  value set over all cells: {all:?}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boomtables::c_boomerang_uniformity;

    #[test]
    fn small_value_sets() {
        let k8 = Field::standard(2, 3).unwrap();
        assert_eq!(compute_atlas(Family::Inverse, &k8, false).unwrap().value_set, vec![1, 2]);
        let k9 = Field::standard(3, 2).unwrap();
        let r = compute_atlas(Family::Square, &k9, true).unwrap();
        assert_eq!(r.value_set, vec![1, 2]);
        assert!(r.value_set_all_cells.is_some());
    }

    #[test]
    fn global_max_matches_per_c_uniformity() {
        let k = Field::standard(3, 2).unwrap();
        let r = compute_atlas(Family::Gold { k: 1 }, &k, false).unwrap();
        let f = Family::Gold { k: 1 }.build(&k).unwrap();
        let best = r.per_c_beta.iter().map(|&(c, _)| c_boomerang_uniformity(&f, c).unwrap().beta).max().unwrap();
        assert_eq!(best, r.global_max_all_a);
        assert_eq!(r.global_max, *r.value_set.last().unwrap());
        // rows a != 0 of a monomial are permutations of row 1
        assert_eq!(r.value_set, r.value_set_all_a);
    }

    #[test]
    fn dob_rows_differ_from_first_row() {
        let k = Field::standard(3, 3).unwrap();
        let r = compute_atlas(Family::Dob { u: Elem::ONE }, &k, false).unwrap();
        assert_eq!(r.value_set, vec![1, 2, 3, 4]);
        assert_eq!(r.global_max_all_a, 5);
    }

    #[test]
    fn export_is_deterministic() {
        let k = Field::standard(3, 2).unwrap();
        let dob = Family::Dob { u: Elem::ONE };
        let a = compute_atlas(dob, &k, false).unwrap();
        let b = compute_atlas(dob, &k, false).unwrap();
        for fmt in [ExportFormat::Json, ExportFormat::Csv] {
            assert_eq!(a.export(fmt), b.export(fmt));
        }
        assert!(a.export(ExportFormat::Json).contains(r#"["2","2*a"]"#));
    }

    #[test]
    fn cost_tiers() {
        assert!(!is_slow(&Field::standard(3, 4).unwrap()));
        assert!(is_slow(&Field::standard(3, 5).unwrap()));
    }
}
