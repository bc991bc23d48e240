//! Lower bounds on the c-boomerang uniformity of Gold functions `x^(p^k + 1)`.

use std::sync::Arc;

use crate::boomtables::{c_bct_system, BoomerangUniformity};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::funcspace::monomial;
use crate::verdict::TheoremVerdict;

use super::trinomial::{gcd, trinomial_roots_cm04, trinomial_roots_scan, TrinomialSpec};

/// Number of roots of `z^(p^k) + z + d`.
pub fn delta_d(field: &Field, d: Elem, k: u32) -> Result<usize> {
    let spec = TrinomialSpec::new(k, field.neg(Elem::ONE), field.neg(d));
    let roots = trinomial_roots_cm04(field, &spec)?;
    debug_assert_eq!(roots.roots, trinomial_roots_scan(field, &spec));
    Ok(roots.count())
}

/// Whether `c^-1 = z^(p^k) + z` for some nonzero `z`.
pub fn in_gold_class(field: &Field, k: u32, c: Elem) -> bool {
    let target = field.inv_nonzero(c);
    field.nonzero().any(|z| field.add(field.frobenius(z, k), z) == target)
}

/// `beta >= delta_{1-1/c} (delta_{1+c} + 1)` for `x^(p^k+1)`, plus the parity refinements.
pub fn gold_bound_check(field: &Arc<Field>, k: u32, c: Elem) -> Result<TheoremVerdict> {
    if c.is_zero() || c == Elem::ONE {
        return Err(Error::ForbiddenMultiplier(format!("c = {} (need c != 0, 1)", field.format(c))));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let d = (field.p() as u128).pow(k) + 1;
    let f = monomial(field, d);
    let table = c_bct_system(&f, c)?;
    let beta = BoomerangUniformity::from_table(&table).beta as usize;
    let pairs: u32 = table.row(Elem::ONE).iter().sum();
    let d1 = delta_d(field, field.sub(Elem::ONE, field.inv_nonzero(c)), k)?;
    let d2 = delta_d(field, field.add(Elem::ONE, c), k)?;
    let bound = d1 * (d2 + 1);
    let g = gcd(field.n(), k);
    let m = field.n() / g;
    let mut v = TheoremVerdict::new("gold-bound")
        .param("p", field.p())
        .param("n", field.n())
        .param("k", k)
        .param("c", field.format(c));
    v.note(format!("beta = {beta}"));
    v.note(format!("delta(1-1/c) = {d1}, delta(1+c) = {d2}, bound = {bound}"));
    v.note(format!("pairs (x, gamma) at a = 1 summed over every b: {pairs}"));
    if beta < bound {
        v.fail(format!("beta {beta} < bound {bound}"));
    }
    if m == 1 {
        v.note("n/gcd(n,k) = 1: F agrees with x^2 on the field");
    } else if m % 2 == 1 {
        if beta < 2 {
            v.fail(format!("n/gcd(n,k) = {m} is odd but beta = {beta} < 2"));
        }
    } else if in_gold_class(field, k, c) {
        let floor = (field.p() as usize).pow(g);
        v.note(format!("1/c lies in the image of z^(p^k) + z, floor p^g = {floor}"));
        if beta < floor {
            v.fail(format!("beta {beta} < p^g = {floor}"));
        }
    }
    Ok(v)
}
