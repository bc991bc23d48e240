//! Exhaustive census of monic quadratics against the closed-form root count.

use crate::ffield::{Elem, Field};
use crate::verdict::TheoremVerdict;

/// Root count predicted from the trace (characteristic 2) or the discriminant (odd `p`).
pub fn predicted_root_count(field: &Field, a1: Elem, a0: Elem) -> usize {
    if field.p() == 2 {
        if a1.is_zero() {
            1
        } else {
            let t = field.mul(a0, field.inv_nonzero(field.mul(a1, a1)));
            if field.trace(t) == 0 { 2 } else { 0 }
        }
    } else {
        let disc = field.sub(field.mul(a1, a1), field.mul(field.from_int(4), a0));
        if disc.is_zero() {
            1
        } else if field.is_square(disc) {
            2
        } else {
            0
        }
    }
}

/// Checks `x^2 + a1 x + a0` for every `(a1, a0)`: solver, prediction and scan must agree.
pub fn lemma_quadratic_census(field: &Field) -> TheoremVerdict {
    let mut v = TheoremVerdict::new("quadratic-census").param("p", field.p()).param("n", field.n());
    let mut histogram = [0usize; 3];
    let mut roots_of = vec![Vec::new(); field.size()];
    for a1 in field.elements() {
        // x^2 + a1 x for each x, shared across a0
        for r in roots_of.iter_mut() {
            r.clear();
        }
        for x in field.elements() {
            let lin = field.add(field.mul(x, x), field.mul(a1, x));
            roots_of[field.neg(lin).index()].push(x);
        }
        for a0 in field.elements() {
            let scan = &roots_of[a0.index()];
            let solved = field.solve_quadratic(a1, a0);
            let predicted = predicted_root_count(field, a1, a0);
            if &solved != scan || predicted != scan.len() {
                v.fail(format!(
                    "a1={}, a0={}: scan {}, solver {}, predicted {predicted}",
                    field.format(a1),
                    field.format(a0),
                    scan.len(),
                    solved.len()
                ));
            }
            histogram[scan.len().min(2)] += 1;
        }
    }
    v.note(format!("root counts 0/1/2: {}/{}/{}", histogram[0], histogram[1], histogram[2]));
    v
}
