//! c-boomerang connectivity tables: the inverse-based definition, the
//! boomerang-system count, a naive oracle, and c-boomerang uniformity.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::difftables::{c_ddt, c_diff_uniformity};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::funcspace::{monomial, FunctionTable};
use crate::tables::{CountTable, TableKind};
use crate::verdict::TheoremVerdict;

fn check_c(c: Elem) -> Result<()> {
    if c.is_zero() {
        Err(Error::ForbiddenMultiplier("c = 0 is not allowed for the c-BCT".into()))
    } else {
        Ok(())
    }
}

/// Number of `x` with `F^-1(c^-1 F(x+a) + b) - F^-1(c F(x) + b) = a`.
pub fn c_bct_def(f: &FunctionTable, c: Elem, a: Elem, b: Elem) -> Result<u32> {
    check_c(c)?;
    let g = f.comp_inverse()?;
    Ok(def_cell(f, &g, c, a, b))
}

fn def_cell(f: &FunctionTable, g: &FunctionTable, c: Elem, a: Elem, b: Elem) -> u32 {
    let k = f.field();
    let c_inv = k.inv_nonzero(c);
    k.elements()
        .filter(|&x| {
            let lhs = g.eval(k.add(k.mul(c_inv, f.eval(k.add(x, a))), b));
            let rhs = g.eval(k.add(k.mul(c, f.eval(x)), b));
            k.sub(lhs, rhs) == a
        })
        .count() as u32
}

/// Full c-BCT from the inverse-based definition (permutations only).
pub fn c_bct_def_table(f: &FunctionTable, c: Elem) -> Result<CountTable> {
    check_c(c)?;
    let g = f.comp_inverse()?;
    let k = f.field();
    let q = k.size();
    let entries: Vec<u32> =
        (0..q * q).into_par_iter().map(|i| def_cell(f, &g, c, Elem((i / q) as u32), Elem((i % q) as u32))).collect();
    Ok(CountTable::new(TableKind::Bct, c, f.label(), k, entries))
}

/// Values bucketed by image: `items[start[v]..start[v+1]]` are the `x` with `G(x) = v`.
struct Buckets {
    start: Vec<u32>,
    items: Vec<u32>,
}

impl Buckets {
    fn new(q: usize) -> Self {
        Buckets { start: vec![0; q + 1], items: vec![0; q] }
    }

    fn fill(&mut self, image: &[Elem]) {
        self.start.iter_mut().for_each(|s| *s = 0);
        for v in image {
            self.start[v.index() + 1] += 1;
        }
        for i in 1..self.start.len() {
            self.start[i] += self.start[i - 1];
        }
        let mut next = self.start.clone();
        for (x, v) in image.iter().enumerate() {
            let slot = &mut next[v.index()];
            self.items[*slot as usize] = x as u32;
            *slot += 1;
        }
    }

    fn get(&self, v: usize) -> &[u32] {
        &self.items[self.start[v] as usize..self.start[v + 1] as usize]
    }
}

struct Scratch {
    acc: Vec<u32>,
    g: Vec<Elem>,
    h: Vec<Elem>,
    gb: Buckets,
    hb: Buckets,
}

impl Scratch {
    fn new(q: usize) -> Self {
        Scratch {
            acc: vec![0; q * q],
            g: vec![Elem::ZERO; q],
            h: vec![Elem::ZERO; q],
            gb: Buckets::new(q),
            hb: Buckets::new(q),
        }
    }
}

/// Adds the contribution of one `gamma` to `s.acc`.
fn accumulate_gamma(f: &FunctionTable, c: Elem, c_inv: Elem, gamma: Elem, s: &mut Scratch) {
    let k = f.field();
    let q = k.size();
    for x in k.elements() {
        let shifted = f.eval(k.add(x, gamma));
        let fx = f.eval(x);
        s.g[x.index()] = k.sub(shifted, k.mul(c, fx));
        s.h[x.index()] = k.sub(shifted, k.mul(c_inv, fx));
    }
    s.gb.fill(&s.g);
    s.hb.fill(&s.h);
    for b in 0..q {
        let xs = s.gb.get(b);
        if xs.is_empty() {
            continue;
        }
        for &y in s.hb.get(b) {
            for &x in xs {
                let a = k.sub(Elem(y), Elem(x));
                s.acc[a.index() * q + b] += 1;
            }
        }
    }
}

/// c-BCT from the boomerang system
/// `F(x+g) - cF(x) = b, F(x+g+a) - c^-1 F(x+a) = b`, counting pairs `(x, g)`.
/// Works for any function, permutation or not.
pub fn c_bct_system(f: &FunctionTable, c: Elem) -> Result<CountTable> {
    check_c(c)?;
    let k = f.field();
    let q = k.size();
    let c_inv = k.inv_nonzero(c);
    let total = (0..q as u32)
        .into_par_iter()
        .fold(
            || Scratch::new(q),
            |mut s, g| {
                accumulate_gamma(f, c, c_inv, Elem(g), &mut s);
                s
            },
        )
        .map(|s| s.acc)
        .reduce(
            || vec![0u32; q * q],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(u, v)| *u += v);
                x
            },
        );
    Ok(CountTable::new(TableKind::Bct, c, f.label(), k, total))
}

/// Single-threaded [`c_bct_system`], for callers that parallelize over `c`.
pub fn c_bct_system_seq(f: &FunctionTable, c: Elem) -> Result<CountTable> {
    check_c(c)?;
    let k = f.field();
    let q = k.size();
    let c_inv = k.inv_nonzero(c);
    let mut s = Scratch::new(q);
    for g in k.elements() {
        accumulate_gamma(f, c, c_inv, g, &mut s);
    }
    Ok(CountTable::new(TableKind::Bct, c, f.label(), k, s.acc))
}

/// Row `a` of the c-BCT: `cB(a, b)` for every `b`, from the boomerang system.
pub fn c_bct_row(f: &FunctionTable, c: Elem, a: Elem) -> Result<Vec<u32>> {
    check_c(c)?;
    let k = f.field();
    let c_inv = k.inv_nonzero(c);
    let mut row = vec![0u32; k.size()];
    for g in k.elements() {
        for x in k.elements() {
            let y = k.add(x, a);
            let lhs = k.sub(f.eval(k.add(x, g)), k.mul(c, f.eval(x)));
            let rhs = k.sub(f.eval(k.add(y, g)), k.mul(c_inv, f.eval(y)));
            if lhs == rhs {
                row[lhs.index()] += 1;
            }
        }
    }
    Ok(row)
}

/// The boomerang system counted by a plain loop over `(a, b, x, gamma)`.
pub fn c_bct_naive(f: &FunctionTable, c: Elem) -> Result<CountTable> {
    check_c(c)?;
    let k = f.field();
    let q = k.size();
    let c_inv = k.inv_nonzero(c);
    let mut entries = vec![0u32; q * q];
    for a in k.elements() {
        for b in k.elements() {
            let mut n = 0;
            for x in k.elements() {
                for g in k.elements() {
                    let first = k.sub(f.eval(k.add(x, g)), k.mul(c, f.eval(x)));
                    let xa = k.add(x, a);
                    let second = k.sub(f.eval(k.add(xa, g)), k.mul(c_inv, f.eval(xa)));
                    if first == b && second == b {
                        n += 1;
                    }
                }
            }
            entries[a.index() * q + b.index()] = n;
        }
    }
    Ok(CountTable::new(TableKind::Bct, c, f.label(), k, entries))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BctMethod {
    System,
    Definition,
    Naive,
}

pub fn c_bct(f: &FunctionTable, c: Elem, method: BctMethod) -> Result<CountTable> {
    match method {
        BctMethod::System => c_bct_system(f, c),
        BctMethod::Definition => c_bct_def_table(f, c),
        BctMethod::Naive => c_bct_naive(f, c),
    }
}

/// Maxima of one c-BCT.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoomerangUniformity {
    pub c: Elem,
    /// max over `a != 0` and `b != 0`
    pub beta: u32,
    /// max over `a != 0`, any `b`
    pub beta_a_nonzero: u32,
    /// max over every cell
    pub beta_all: u32,
    /// cells with `a, b != 0` attaining `beta`
    pub argmax: Vec<(Elem, Elem)>,
}

impl BoomerangUniformity {
    pub fn from_table(t: &CountTable) -> Self {
        let nz = |a: Elem, b: Elem| !a.is_zero() && !b.is_zero();
        let beta = t.max_where(nz);
        BoomerangUniformity {
            c: t.c,
            beta,
            beta_a_nonzero: t.max_where(|a, _| !a.is_zero()),
            beta_all: t.max_where(|_, _| true),
            argmax: t.cells_equal(beta, nz),
        }
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        json!({
            "c": field.format(self.c),
            "beta": self.beta,
            "beta_a_nonzero": self.beta_a_nonzero,
            "beta_all": self.beta_all,
            "argmax": self.argmax.iter().map(|&(a, b)| [field.format(a), field.format(b)]).collect::<Vec<_>>(),
        })
    }
}

/// `beta_{F,c}`: the largest c-BCT entry with `a, b` both nonzero.
pub fn c_boomerang_uniformity(f: &FunctionTable, c: Elem) -> Result<BoomerangUniformity> {
    Ok(BoomerangUniformity::from_table(&c_bct_system(f, c)?))
}

/// For `F = x^d`: `cB(a, b) = cB(1, b a^-d)` for all `a != 0`.
pub fn monomial_shift_check(field: &Arc<Field>, d: u128, c: Elem) -> Result<TheoremVerdict> {
    let f = monomial(field, d);
    let t = c_bct_system(&f, c)?;
    let k = field;
    let mut v = TheoremVerdict::new("monomial-shift")
        .param("p", k.p())
        .param("n", k.n())
        .param("d", d)
        .param("c", k.format(c));
    for a in k.nonzero() {
        let a_md = k.inv_nonzero(k.pow_u128(a, d));
        for b in k.elements() {
            let lhs = t.get(a, b);
            let rhs = t.get(Elem::ONE, k.mul(b, a_md));
            if lhs != rhs {
                v.fail(format!("a={}, b={}: {lhs} vs {rhs}", k.format(a), k.format(b)));
            }
        }
    }
    Ok(v)
}

/// `cB(0, b) = cDDT(0, b)` for a permutation and `c != 0, 1`.
pub fn zero_row_check(f: &FunctionTable, c: Elem) -> Result<TheoremVerdict> {
    let k = f.field();
    if c == Elem::ONE {
        return Err(Error::ForbiddenMultiplier("c = 1".into()));
    }
    if !f.is_perm() {
        return Err(Error::NotPermutation);
    }
    let bct = c_bct_system(f, c)?;
    let ddt = c_ddt(f, c);
    let mut v = TheoremVerdict::new("bct-zero-row").param("function", f.label()).param("c", k.format(c));
    for b in k.elements() {
        let (x, y) = (bct.get(Elem::ZERO, b), ddt.get(Elem::ZERO, b));
        if x != y {
            v.fail(format!("b={}: BCT {x}, DDT {y}", k.format(b)));
        }
    }
    Ok(v)
}

/// For a permutation, the `gamma = a` slice of the boomerang system count
/// equals the c-DDT entry on the cells `(a, b)` selected by `keep`.
pub fn gamma_a_slice_check(
    f: &FunctionTable,
    c: Elem,
    keep: impl Fn(Elem, Elem) -> bool,
) -> Result<TheoremVerdict> {
    check_c(c)?;
    if !f.is_perm() {
        return Err(Error::NotPermutation);
    }
    let k = f.field();
    let c_inv = k.inv_nonzero(c);
    let ddt = c_ddt(f, c);
    let mut v = TheoremVerdict::new("bct-gamma-a-slice").param("function", f.label()).param("c", k.format(c));
    for a in k.elements() {
        for b in k.elements().filter(|&b| keep(a, b)) {
            let slice = k
                .elements()
                .filter(|&x| {
                    let xa = k.add(x, a);
                    k.sub(f.eval(xa), k.mul(c, f.eval(x))) == b
                        && k.sub(f.eval(k.add(xa, a)), k.mul(c_inv, f.eval(xa))) == b
                })
                .count() as u32;
            if slice != ddt.get(a, b) {
                v.fail(format!("a={}, b={}: slice {slice}, DDT {}", k.format(a), k.format(b), ddt.get(a, b)));
            }
        }
    }
    Ok(v)
}

/// `beta_{F,-1} >= delta_{F,-1}` for odd `p`; `beta_F >= delta_F` at `c = 1` for `p = 2`.
pub fn beta_minus1_vs_delta(f: &FunctionTable) -> Result<TheoremVerdict> {
    if !f.is_perm() {
        return Err(Error::NotPermutation);
    }
    let k = f.field();
    let c = k.neg(Elem::ONE);
    let u = c_boomerang_uniformity(f, c)?;
    let beta = u.beta;
    let delta = c_diff_uniformity(f, c);
    let mut v = TheoremVerdict::new("beta-vs-delta")
        .param("function", f.label())
        .param("p", k.p())
        .param("n", k.n())
        .param("c", k.format(c));
    v.note(format!("beta = {beta}, delta = {delta}"));
    v.note(format!("max over all cells = {}", u.beta_all));
    if beta < delta {
        v.fail(format!("beta {beta} < delta {delta}"));
    }
    Ok(v)
}

/// Classical `delta <= beta <= delta (delta - 1)` at `c = 1`.
pub fn sandwich_check(f: &FunctionTable) -> Result<TheoremVerdict> {
    if !f.is_perm() {
        return Err(Error::NotPermutation);
    }
    let k = f.field();
    let beta = c_boomerang_uniformity(f, Elem::ONE)?.beta;
    let delta = c_diff_uniformity(f, Elem::ONE);
    let mut v = TheoremVerdict::new("classical-sandwich").param("function", f.label()).param("p", k.p()).param("n", k.n());
    v.note(format!("beta = {beta}, delta = {delta}"));
    if !(delta <= beta && beta <= delta * delta.saturating_sub(1)) {
        v.fail(format!("delta {delta}, beta {beta}"));
    }
    Ok(v)
}
