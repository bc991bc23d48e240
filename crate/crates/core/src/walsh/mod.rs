//! Exact Walsh transforms over `Z[zeta_p]` and the Walsh-side
//! characterizations of c-boomerang uniformity.
//!
//! `W(a, b) = sum_x zeta^(Tr(b F(x)) - Tr(a x))`: the first argument is the
//! linear mask, the second selects the component function.

mod cyclotomic;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

pub use cyclotomic::CyclotomicInt;

use crate::boomtables::c_boomerang_uniformity;
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::funcspace::FunctionTable;

fn check_c(c: Elem) -> Result<()> {
    if c.is_zero() {
        Err(Error::ForbiddenMultiplier("c = 0".into()))
    } else {
        Ok(())
    }
}

fn character_sum(p: u32, counts: &[i128]) -> CyclotomicInt {
    CyclotomicInt::from_full(p, counts)
}

/// `W_F(a, b)` by direct summation.
pub fn walsh_transform(f: &FunctionTable, a: Elem, b: Elem) -> CyclotomicInt {
    let k = f.field();
    let p = k.p();
    let mut counts = vec![0i128; p as usize];
    for x in k.elements() {
        let e = (k.trace(k.mul(b, f.eval(x))) + p - k.trace(k.mul(a, x))) % p;
        counts[e as usize] += 1;
    }
    character_sum(p, &counts)
}

/// `sum_v zeta^Tr(v alpha)`.
pub fn trace_character_sum(field: &Field, alpha: Elem) -> CyclotomicInt {
    let p = field.p();
    let mut counts = vec![0i128; p as usize];
    for v in field.elements() {
        counts[field.trace(field.mul(v, alpha)) as usize] += 1;
    }
    character_sum(p, &counts)
}

/// All Walsh values of one function, indexed `(a, b)`.
#[derive(Clone, Debug)]
pub struct WalshTable {
    field: Arc<Field>,
    values: Vec<CyclotomicInt>,
}

impl WalshTable {
    pub fn new(f: &FunctionTable) -> WalshTable {
        let k = f.field();
        let q = k.size();
        let p = k.p();
        // Tr(a x) and Tr(b F(x)) as rows of a q x q trace matrix
        let tr: Vec<u32> = (0..q * q).map(|i| k.trace(k.mul(Elem((i / q) as u32), Elem((i % q) as u32)))).collect();
        let values = (0..q * q)
            .into_par_iter()
            .map(|i| {
                let (a, b) = (i / q, i % q);
                let mut counts = vec![0i128; p as usize];
                for x in 0..q {
                    let bf = tr[b * q + f.values()[x].index()];
                    let ax = tr[a * q + x];
                    counts[((bf + p - ax) % p) as usize] += 1;
                }
                character_sum(p, &counts)
            })
            .collect();
        WalshTable { field: k.clone(), values }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> &CyclotomicInt {
        &self.values[a.index() * self.field.size() + b.index()]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = self.field.size();
        let rows: Vec<Vec<&[i128]>> =
            self.values.chunks(q).map(|row| row.iter().map(|v| v.coeffs()).collect()).collect();
        json!({ "field": self.field.spec(), "p": self.field.p(), "values": rows })
    }
}

/// `#{(x, y) : F(y) - cF(x) = b, F(y+a) - c^-1 F(x+a) = b}` by a double loop.
pub fn n_f_count(f: &FunctionTable, c: Elem, a: Elem, b: Elem) -> Result<u32> {
    check_c(c)?;
    let k = f.field();
    let c_inv = k.inv_nonzero(c);
    let mut n = 0;
    for x in k.elements() {
        let fx = k.mul(c, f.eval(x));
        let fxa = k.mul(c_inv, f.eval(k.add(x, a)));
        for y in k.elements() {
            if k.sub(f.eval(y), fx) == b && k.sub(f.eval(k.add(y, a)), fxa) == b {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Every `n_F(a, b, c)`, row-major in `(a, b)`.
pub fn n_f_table(f: &FunctionTable, c: Elem) -> Result<Vec<u32>> {
    check_c(c)?;
    let k = f.field();
    let q = k.size();
    let c_inv = k.inv_nonzero(c);
    let rows: Vec<Vec<u32>> = (0..q as u32)
        .into_par_iter()
        .map(|a| {
            let a = Elem(a);
            let mut row = vec![0u32; q];
            for x in k.elements() {
                let fx = k.mul(c, f.eval(x));
                let fxa = k.mul(c_inv, f.eval(k.add(x, a)));
                for y in k.elements() {
                    let b = k.sub(f.eval(y), fx);
                    if k.sub(f.eval(k.add(y, a)), fxa) == b {
                        row[b.index()] += 1;
                    }
                }
            }
            row
        })
        .collect();
    Ok(rows.concat())
}

/// `phi(x) = sum A_j x^j` with `phi(1..=beta) = 0` and `phi > 0` above `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPolynomial {
    pub beta: u32,
    pub coeffs: Vec<BigInt>,
}

impl PhiPolynomial {
    pub fn eval(&self, x: u64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, a| acc * &x + a)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `prod_{i=1}^{beta} (x - i)`, checked on the integers `1..=bound`.
pub fn build_phi(beta: u32, bound: u64) -> Result<PhiPolynomial> {
    if beta == 0 {
        return Err(Error::InvalidParameter("beta must be at least 1".into()));
    }
    let mut coeffs = vec![BigInt::one()];
    for i in 1..=beta {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= a * BigInt::from(i);
        }
        coeffs = next;
    }
    let phi = PhiPolynomial { beta, coeffs };
    for x in 1..=bound.max(beta as u64 + 1) {
        let v = phi.eval(x);
        let ok = if x <= beta as u64 { v.is_zero() } else { v.is_positive() };
        if !ok {
            return Err(Error::InvalidParameter(format!("phi_{beta} has the wrong sign at {x}")));
        }
    }
    Ok(phi)
}

/// `R(s, t) = sum over w + z = s, u + v = t` of
/// `W(z, u) conj W(-w, c u) W(-z, v) conj W(w, c^-1 v)`, indexed `s * q + t`.
fn grouped_terms(wt: &WalshTable, c: Elem) -> Vec<CyclotomicInt> {
    let k = wt.field();
    let q = k.size();
    let p = k.p();
    let c_inv = k.inv_nonzero(c);
    let conj: Vec<CyclotomicInt> = wt.values.iter().map(|v| v.conj()).collect();
    let cw = |a: Elem, b: Elem| &conj[a.index() * q + b.index()];
    (0..q * q)
        .into_par_iter()
        .map(|st| {
            let (s, t) = (Elem((st / q) as u32), Elem((st % q) as u32));
            let mut acc = CyclotomicInt::zero(p);
            for w in k.elements() {
                let z = k.sub(s, w);
                for u in k.elements() {
                    let v = k.sub(t, u);
                    let left = wt.get(z, u).mul(cw(k.neg(w), k.mul(c, u)));
                    let right = wt.get(k.neg(z), v).mul(cw(w, k.mul(c_inv, v)));
                    acc.add_assign(&left.mul(&right));
                }
            }
            acc
        })
        .collect()
}

/// The constrained Walsh sums `S_1, ..., S_jmax` (`jmax <= 2`).
pub fn walsh_sums(f: &FunctionTable, c: Elem, j_max: usize) -> Result<Vec<CyclotomicInt>> {
    check_c(c)?;
    if j_max > 2 {
        return Err(Error::InvalidParameter("Walsh sums are computed for j <= 2 only".into()));
    }
    let k = f.field();
    if k.order() > 81 {
        return Err(Error::InvalidParameter("Walsh sums are limited to fields with at most 81 elements".into()));
    }
    let wt = WalshTable::new(f);
    let r = grouped_terms(&wt, c);
    let q = k.size();
    let mut out = Vec::new();
    if j_max >= 1 {
        out.push(r[0].clone());
    }
    if j_max >= 2 {
        let mut s2 = CyclotomicInt::zero(k.p());
        for s in k.elements() {
            for t in k.elements() {
                let back = k.neg(s).index() * q + k.neg(t).index();
                s2.add_assign(&r[s.index() * q + t.index()].mul(&r[back]));
            }
        }
        out.push(s2);
    }
    Ok(out)
}

/// The constrained sum `S_j` by enumerating the free variables one by one.
pub fn walsh_sum_direct(f: &FunctionTable, c: Elem, j: usize) -> Result<CyclotomicInt> {
    check_c(c)?;
    let k = f.field();
    let wt = WalshTable::new(f);
    let c_inv = k.inv_nonzero(c);
    let term = |w: Elem, z: Elem, u: Elem, v: Elem| {
        wt.get(z, u)
            .mul(&wt.get(k.neg(w), k.mul(c, u)).conj())
            .mul(wt.get(k.neg(z), v))
            .mul(&wt.get(w, k.mul(c_inv, v)).conj())
    };
    let mut acc = CyclotomicInt::zero(k.p());
    match j {
        1 => {
            for z in k.elements() {
                for u in k.elements() {
                    acc.add_assign(&term(k.neg(z), z, u, k.neg(u)));
                }
            }
        }
        2 => {
            if k.order() > 9 {
                return Err(Error::InvalidParameter("direct j = 2 enumeration is limited to 9 elements".into()));
            }
            for w1 in k.elements() {
                for z1 in k.elements() {
                    for u1 in k.elements() {
                        for v1 in k.elements() {
                            let first = term(w1, z1, u1, v1);
                            let s = k.add(w1, z1);
                            let t = k.add(u1, v1);
                            for w2 in k.elements() {
                                let z2 = k.neg(k.add(s, w2));
                                for u2 in k.elements() {
                                    let v2 = k.neg(k.add(t, u2));
                                    acc.add_assign(&first.mul(&term(w2, z2, u2, v2)));
                                }
                            }
                        }
                    }
                }
            }
        }
        _ => return Err(Error::InvalidParameter("direct enumeration supports j in {1, 2}".into())),
    }
    Ok(acc)
}

fn rational(v: &CyclotomicInt, what: &str) -> Result<i128> {
    v.as_rational().ok_or_else(|| Error::InvalidParameter(format!("{what} is not rational: {v}")))
}

/// `p^(2n) A_0 + sum_{j <= jmax} p^(-(2j-1) 2n) A_j S_j`, exactly.
pub fn charact_lhs(f: &FunctionTable, c: Elem, phi: &PhiPolynomial, j_max: usize) -> Result<BigInt> {
    if j_max > phi.degree() {
        return Err(Error::InvalidParameter(format!("j_max {j_max} exceeds deg phi = {}", phi.degree())));
    }
    let sums = walsh_sums(f, c, j_max)?;
    let q = BigInt::from(f.field().order());
    let mut total = q.pow(2) * &phi.coeffs[0];
    for (idx, s) in sums.iter().enumerate() {
        let j = idx as u32 + 1;
        let s = BigInt::from(rational(s, &format!("S_{j}"))?);
        let scale = q.pow(4 * j - 2);
        if !(&s % &scale).is_zero() {
            return Err(Error::InvalidParameter(format!("S_{j} = {s} is not divisible by {scale}")));
        }
        total += &phi.coeffs[j as usize] * (s / scale);
    }
    Ok(total)
}

/// `sum_{a,b} phi(n_F(a, b, c))`, from the direct pair counts.
pub fn phi_sum_direct(f: &FunctionTable, c: Elem, phi: &PhiPolynomial) -> Result<BigInt> {
    Ok(n_f_table(f, c)?.into_iter().map(|n| phi.eval(n as u64)).sum())
}

/// `sum_{a,b} n_F(a, b, c)^j`.
pub fn power_sum(f: &FunctionTable, c: Elem, j: u32) -> Result<BigInt> {
    Ok(n_f_table(f, c)?.into_iter().map(|n| BigInt::from(n).pow(j)).sum())
}

/// Outcome of the one-uniform Walsh criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneUniformReport {
    pub c: Elem,
    pub sum: i128,
    pub bound: i128,
    pub beta: u32,
    pub zero_cells: usize,
}

impl OneUniformReport {
    pub fn equality(&self) -> bool {
        self.sum == self.bound
    }

    /// Equality holds exactly when the c-BCT is 1-uniform.
    pub fn consistent(&self) -> bool {
        self.sum >= self.bound && self.equality() == (self.beta == 1)
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        json!({
            "c": field.format(self.c),
            "beta_tested": 1,
            "lhs": self.sum.to_string(),
            "bound": self.bound.to_string(),
            "equality": self.equality(),
            "beta": self.beta,
            "zero_cells": self.zero_cells,
        })
    }
}

/// `sum_{z,v} W(z,-v) conj W(z,-cv) W(-z,v) conj W(-z,c^-1 v)`, compared with `p^(4n)`.
pub fn one_uniform_sum(f: &FunctionTable, c: Elem) -> Result<OneUniformReport> {
    check_c(c)?;
    if c == Elem::ONE {
        return Err(Error::ForbiddenMultiplier("c = 1".into()));
    }
    let k = f.field();
    let wt = WalshTable::new(f);
    let c_inv = k.inv_nonzero(c);
    let mut acc = CyclotomicInt::zero(k.p());
    for z in k.elements() {
        for v in k.elements() {
            let t = wt
                .get(z, k.neg(v))
                .mul(&wt.get(z, k.neg(k.mul(c, v))).conj())
                .mul(wt.get(k.neg(z), v))
                .mul(&wt.get(k.neg(z), k.mul(c_inv, v)).conj());
            acc.add_assign(&t);
        }
    }
    let sum = rational(&acc, "one-uniform sum")?;
    let bound = (k.order() as i128).pow(4);
    let u = c_boomerang_uniformity(f, c)?;
    let zero_cells = n_f_table(f, c)?.iter().filter(|&&n| n == 0).count();
    Ok(OneUniformReport { c, sum, bound, beta: u.beta, zero_cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boomtables::c_bct_system;
    use crate::funcspace::{monomial, Family};

    fn field(p: u32, n: u32) -> Arc<Field> {
        Field::standard(p, n).unwrap()
    }

    #[test]
    fn walsh_examples() {
        let k = field(3, 2);
        let f = monomial(&k, 2);
        assert_eq!(walsh_transform(&f, Elem::ZERO, Elem::ZERO).as_rational(), Some(9));
        for a in k.nonzero() {
            assert_eq!(walsh_transform(&f, a, Elem::ZERO).as_rational(), Some(0));
        }
        let wt = WalshTable::new(&f);
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(wt.get(a, b), &walsh_transform(&f, a, b));
            }
        }
    }

    #[test]
    fn parseval_and_orthogonality() {
        for (p, n) in [(2, 4), (3, 2), (3, 3), (5, 2)] {
            let k = field(p, n);
            let q = k.order() as i128;
            for alpha in k.elements() {
                let expect = if alpha.is_zero() { q } else { 0 };
                assert_eq!(trace_character_sum(&k, alpha).as_rational(), Some(expect));
            }
            let wt = WalshTable::new(&Family::Inverse.build(&k).unwrap());
            for b in k.elements() {
                let mut acc = CyclotomicInt::zero(p);
                for a in k.elements() {
                    acc = acc.add(&wt.get(a, b).norm_sq());
                }
                assert_eq!(acc.as_rational(), Some(q * q));
            }
        }
    }

    #[test]
    fn n_f_matches_system() {
        for (p, n) in [(2, 3), (3, 2), (3, 3)] {
            let k = field(p, n);
            for f in [monomial(&k, 2), Family::Inverse.build(&k).unwrap()] {
                for c in k.nonzero() {
                    let sys = c_bct_system(&f, c).unwrap();
                    assert_eq!(n_f_table(&f, c).unwrap(), sys.entries());
                }
            }
        }
        let k = field(3, 2);
        let f = monomial(&k, 3);
        assert_eq!(n_f_count(&f, k.alpha(), Elem::ZERO, k.alpha()).unwrap(), 1);
    }

    #[test]
    fn phi_examples() {
        let phi1 = build_phi(1, 81).unwrap();
        assert_eq!(phi1.coeffs, vec![BigInt::from(-1), BigInt::from(1)]);
        let phi2 = build_phi(2, 81).unwrap();
        assert_eq!(phi2.coeffs, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(1)]);
        assert!(phi2.eval(2).is_zero() && phi2.eval(3).is_positive());
    }

    #[test]
    fn grouped_sums_match_direct_enumeration() {
        let k = field(3, 2);
        let f = monomial(&k, 2);
        for c in [k.alpha(), k.neg(Elem::ONE)] {
            let sums = walsh_sums(&f, c, 2).unwrap();
            assert_eq!(sums[0], walsh_sum_direct(&f, c, 1).unwrap());
            assert_eq!(sums[1], walsh_sum_direct(&f, c, 2).unwrap());
        }
    }

    #[test]
    fn pivot_identity_small() {
        let k = field(3, 2);
        let f = Family::Inverse.build(&k).unwrap();
        let q4 = BigInt::from(9u32).pow(4);
        for c in k.nonzero() {
            let sums = walsh_sums(&f, c, 2).unwrap();
            let s1 = BigInt::from(sums[0].as_rational().unwrap());
            let s2 = BigInt::from(sums[1].as_rational().unwrap());
            assert_eq!(s1, power_sum(&f, c, 1).unwrap() * BigInt::from(81));
            assert_eq!(s2, power_sum(&f, c, 2).unwrap() * &q4 * BigInt::from(81));
            let phi = build_phi(2, 81).unwrap();
            assert_eq!(charact_lhs(&f, c, &phi, 2).unwrap(), phi_sum_direct(&f, c, &phi).unwrap());
        }
        assert!(charact_lhs(&f, k.alpha(), &build_phi(3, 81).unwrap(), 3).is_err());
    }

    #[test]
    fn one_uniform_examples() {
        let k = field(2, 2);
        let inv = Family::Inverse.build(&k).unwrap();
        let r = one_uniform_sum(&inv, k.alpha()).unwrap();
        assert_eq!(r.sum, 256);
        assert!(r.equality() && r.consistent());
        let k16 = field(2, 4);
        let inv16 = Family::Inverse.build(&k16).unwrap();
        // the sum is q^2 * sum_{a,b} n_F, which zero cells can pull below q^4
        for c in k16.nonzero().filter(|&c| c != Elem::ONE) {
            let r = one_uniform_sum(&inv16, c).unwrap();
            assert_eq!(BigInt::from(r.sum), power_sum(&inv16, c, 1).unwrap() * BigInt::from(256));
            assert!(r.zero_cells > 0);
        }
        let r = one_uniform_sum(&inv16, k16.alpha()).unwrap();
        assert_eq!((r.sum, r.beta), (50176, 3));
        assert!(!r.consistent());
        assert!(one_uniform_sum(&inv16, Elem::ONE).is_err());
    }
}
