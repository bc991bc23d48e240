//! Chebyshev-form counts `mu_c` for `x^((3^k + 1)/2)` over `F_{3^n}`.

use std::sync::Arc;

use crate::boomtables::c_bct_system;
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::funcspace::monomial;
use crate::verdict::TheoremVerdict;

/// Which form of the two-equation Chebyshev system to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSystem {
    /// the system with coefficients `c - 1/c` and `c + 1/c` as displayed
    Stated,
    /// the sum and difference of the expanded boomerang equations
    Expanded,
    /// the stated `c = -1` specialisation
    MinusOne,
}

struct Cheb {
    plus: Vec<Elem>,
    minus: Vec<Elem>,
}

fn cheb_tables(field: &Field, k: u32) -> Cheb {
    let ell_plus = (3u64.pow(k) + 1) / 2;
    let ell_minus = (3u64.pow(k) - 1) / 2;
    Cheb {
        plus: field.elements().map(|w| field.chebyshev_t(ell_plus, w)).collect(),
        minus: field.elements().map(|w| field.chebyshev_t(ell_minus, w)).collect(),
    }
}

fn check_params(field: &Field, k: u32, c: Elem) -> Result<()> {
    if field.p() != 3 {
        return Err(Error::InvalidParameter("mu_c is defined for p = 3 only".into()));
    }
    if c.is_zero() {
        return Err(Error::ForbiddenMultiplier("c = 0".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// `mu_c(b)` for every `b` at once, indexed by `b`.
pub fn mu_c_counts(field: &Field, k: u32, c: Elem, system: MuSystem) -> Result<Vec<u32>> {
    check_params(field, k, c)?;
    if system == MuSystem::MinusOne && c != field.neg(Elem::ONE) {
        return Err(Error::InvalidParameter("the c = -1 system needs c = -1".into()));
    }
    let t = cheb_tables(field, k);
    let ci = field.inv_nonzero(c);
    let (s, d) = (field.add(c, ci), field.sub(c, ci));
    let two = field.from_int(2);
    let half = field.inv_nonzero(two);
    let mut counts = vec![0u32; field.size()];
    for x in field.elements() {
        let y = field.sub(x, Elem::ONE);
        let (yp, ym) = (t.plus[y.index()], t.minus[y.index()]);
        // per-x parts of the two equations: first = 2b, second = 0
        let (r1, r2, lead1, lead2) = match system {
            MuSystem::Stated => (
                field.add(field.neg(field.mul(d, yp)), field.mul(s, ym)),
                field.sub(field.mul(s, yp), field.mul(d, ym)),
                two,
                two,
            ),
            MuSystem::Expanded => (
                field.add(field.neg(field.mul(s, yp)), field.mul(d, ym)),
                field.sub(field.mul(d, yp), field.mul(s, ym)),
                two,
                two,
            ),
            MuSystem::MinusOne => (ym, field.neg(yp), Elem::ONE, Elem::ONE),
        };
        for gamma in field.elements() {
            let w = field.add(y, gamma);
            let e2 = field.add(field.mul(lead2, t.minus[w.index()]), r2);
            if !e2.is_zero() {
                continue;
            }
            let e1 = field.add(field.mul(lead1, t.plus[w.index()]), r1);
            let b = field.mul(e1, half);
            counts[b.index()] += 1;
        }
    }
    Ok(counts)
}

/// `mu_c` for a single `b`.
pub fn mu_c_count(field: &Field, k: u32, c: Elem, b: Elem, system: MuSystem) -> Result<u32> {
    Ok(mu_c_counts(field, k, c, system)?[b.index()])
}

/// Compares `cB_F(1, b)` with every `mu_c` variant for `F = x^((3^k+1)/2)` and all `b != 0`.
pub fn mu_c_check(field: &Arc<Field>, k: u32, c: Elem) -> Result<TheoremVerdict> {
    check_params(field, k, c)?;
    if c == Elem::ONE {
        return Err(Error::ForbiddenMultiplier("c = 1".into()));
    }
    let d = (3u128.pow(k) + 1) / 2;
    let f = monomial(field, d);
    let table = c_bct_system(&f, c)?;
    let stated = mu_c_counts(field, k, c, MuSystem::Stated)?;
    let expanded = mu_c_counts(field, k, c, MuSystem::Expanded)?;
    let minus_one = field.neg(Elem::ONE);
    let special = if c == minus_one { Some(mu_c_counts(field, k, c, MuSystem::MinusOne)?) } else { None };
    let mut v = TheoremVerdict::new("mu-c")
        .param("p", 3)
        .param("n", field.n())
        .param("k", k)
        .param("c", field.format(c));
    let (mut stated_eq, mut expanded_eq, mut special_eq) = (0, 0, 0);
    let total = field.order() as usize - 1;
    for b in field.nonzero() {
        let entry = table.get(Elem::ONE, b);
        let mu = stated[b.index()];
        if entry < mu {
            v.fail(format!("b={}: cB(1,b) = {entry} < mu_c = {mu}", field.format(b)));
        }
        stated_eq += usize::from(entry == mu);
        expanded_eq += usize::from(entry == expanded[b.index()]);
        if let Some(sp) = &special {
            let m = sp[b.index()];
            special_eq += usize::from(entry == m);
            if entry < m {
                v.fail(format!("b={}: cB(1,b) = {entry} < c=-1 count {m}", field.format(b)));
            }
        }
    }
    v.note(format!("cB(1,b) = mu_c for {stated_eq} of {total} nonzero b"));
    v.note(format!("cB(1,b) = expanded-system count for {expanded_eq} of {total} nonzero b"));
    if let Some(sp) = &special {
        v.note(format!("cB(1,b) = c=-1 count for {special_eq} of {total} nonzero b"));
        let agree = field.nonzero().filter(|b| sp[b.index()] == stated[b.index()]).count();
        v.note(format!("c=-1 count = mu_c for {agree} of {total} nonzero b"));
    }
    let below = table
        .cells()
        .filter(|&(a, b, e)| !a.is_zero() && !b.is_zero() && e < stated[b.index()])
        .count();
    v.note(format!("cells with a, b != 0 and cB(a,b) < mu_c(b): {below}"));
    Ok(v)
}
