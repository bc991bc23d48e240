//! c-derivatives, the c-difference distribution table and c-differential
//! uniformity.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::Elem;
use crate::funcspace::{monomial, FunctionTable};
use crate::tables::{CountTable, TableKind};
use crate::verdict::TheoremVerdict;

/// `x -> F(x + a) - c F(x)`.
pub fn c_derivative(f: &FunctionTable, c: Elem, a: Elem) -> FunctionTable {
    let k = f.field();
    FunctionTable::from_fn(k, format!("D[{}, c={}]({})", k.format(a), k.format(c), f.label()), |x| {
        k.sub(f.eval(k.add(x, a)), k.mul(c, f.eval(x)))
    })
}

fn ddt_row(f: &FunctionTable, c: Elem, a: Elem) -> Vec<u32> {
    let k = f.field();
    let mut row = vec![0u32; k.size()];
    for x in k.elements() {
        let b = k.sub(f.eval(k.add(x, a)), k.mul(c, f.eval(x)));
        row[b.index()] += 1;
    }
    row
}

/// The c-DDT, built row by row in parallel.
pub fn c_ddt(f: &FunctionTable, c: Elem) -> CountTable {
    let k = f.field();
    let rows: Vec<Vec<u32>> = (0..k.order()).into_par_iter().map(|a| ddt_row(f, c, Elem(a))).collect();
    CountTable::new(TableKind::Ddt, c, f.label(), k, rows.concat())
}

/// Whether row `a` takes part in the uniformity maximum.
#[inline]
pub fn counts_row(c: Elem, a: Elem) -> bool {
    c != Elem::ONE || !a.is_zero()
}

/// Max c-DDT entry, skipping the row `a = 0` only when `c = 1`.
pub fn c_diff_uniformity(f: &FunctionTable, c: Elem) -> u32 {
    let k = f.field();
    (0..k.order())
        .into_par_iter()
        .map(Elem)
        .filter(|&a| counts_row(c, a))
        .map(|a| ddt_row(f, c, a).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

pub fn table_uniformity(t: &CountTable) -> u32 {
    t.max_where(|a, _| counts_row(t.c, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcnClass {
    PcN,
    APcN,
    Uniform(u32),
}

impl PcnClass {
    pub fn delta(self) -> u32 {
        match self {
            PcnClass::PcN => 1,
            PcnClass::APcN => 2,
            PcnClass::Uniform(d) => d,
        }
    }
}

impl std::fmt::Display for PcnClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PcnClass::PcN => write!(f, "PcN"),
            PcnClass::APcN => write!(f, "APcN"),
            PcnClass::Uniform(d) => write!(f, "{d}-uniform"),
        }
    }
}

pub fn classify_pcn(f: &FunctionTable, c: Elem) -> PcnClass {
    match c_diff_uniformity(f, c) {
        1 => PcnClass::PcN,
        2 => PcnClass::APcN,
        d => PcnClass::Uniform(d),
    }
}

/// PcN test through the c-derivatives: every counted derivative is a permutation.
pub fn pcn_by_derivatives(f: &FunctionTable, c: Elem) -> bool {
    f.field().elements().filter(|&a| counts_row(c, a)).all(|a| c_derivative(f, c, a).is_perm())
}

fn inverse_ddt_mismatches(
    field: &std::sync::Arc<crate::Field>,
    d: u128,
    c: Elem,
    negate: bool,
) -> Result<(usize, Vec<String>)> {
    if c.is_zero() {
        return Err(Error::ForbiddenMultiplier("c = 0".into()));
    }
    let k = field;
    let f = monomial(k, d);
    let g = f.comp_inverse()?;
    let c_inv = k.inv_nonzero(c);
    let c_md = k.pow_u128(c_inv, d);
    let left = c_ddt(&g, c);
    let right = c_ddt(&f, c_md);
    let mut count = 0;
    let mut shown = Vec::new();
    for (a, b, lhs) in left.cells() {
        let rb = k.mul(a, c_md);
        let rhs = right.get(k.mul(b, c_inv), if negate { k.neg(rb) } else { rb });
        if lhs != rhs {
            count += 1;
            if shown.len() < 8 {
                shown.push(format!("a={}, b={}: lhs {lhs}, rhs {rhs}", k.format(a), k.format(b)));
            }
        }
    }
    Ok((count, shown))
}

/// Checks `cDDT_{F^-1}(a, b) = (c^-d)DDT_F(b/c, -a c^-d)` for `F = x^d`.
///
/// The notes also count the cells where the `+a c^-d` variant fails.
pub fn monomial_inverse_ddt_check(field: &std::sync::Arc<crate::Field>, d: u128, c: Elem) -> Result<TheoremVerdict> {
    let (count, shown) = inverse_ddt_mismatches(field, d, c, true)?;
    let (plus, _) = inverse_ddt_mismatches(field, d, c, false)?;
    let mut v = verdict_head("monomial-inverse-ddt", field, d, c);
    for s in shown {
        v.fail(s);
    }
    v.pass = count == 0;
    v.note(format!("mismatching cells: {count}"));
    v.note(format!("mismatching cells with +a*c^-d in the second slot: {plus}"));
    Ok(v)
}

/// Checks `cDDT_{F^-1}(a, b) = (c^-d)DDT_F(b/c, a c^-d)` for `F = x^d`.
pub fn monomial_inverse_ddt_check_plus(
    field: &std::sync::Arc<crate::Field>,
    d: u128,
    c: Elem,
) -> Result<TheoremVerdict> {
    let (count, shown) = inverse_ddt_mismatches(field, d, c, false)?;
    let mut v = verdict_head("monomial-inverse-ddt-plus", field, d, c);
    for s in shown {
        v.fail(s);
    }
    v.pass = count == 0;
    Ok(v)
}

fn verdict_head(name: &str, k: &crate::Field, d: u128, c: Elem) -> TheoremVerdict {
    TheoremVerdict::new(name).param("p", k.p()).param("n", k.n()).param("d", d).param("c", k.format(c))
}
