//! Chebyshev evaluation, quadratic solving, square roots, the gcd lemma and
//! Artin-Schreier (Hilbert 90) witnesses.

use super::{Elem, Field};

/// Roots of a monic quadratic, each verified by substitution.
pub type QuadraticRoots = Vec<Elem>;

impl Field {
    /// `T_ell(w)` by the three-term recurrence `T_0 = 2, T_1 = w`.
    pub fn chebyshev_t(&self, ell: u64, w: Elem) -> Elem {
        let two = self.from_int(2);
        if ell == 0 {
            return two;
        }
        let (mut prev, mut cur) = (two, w);
        for _ in 1..ell {
            let next = self.sub(self.mul(w, cur), prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// A square root of `x`, if one exists.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x.is_zero() {
            return Some(Elem::ZERO);
        }
        if self.p() == 2 {
            return Some(self.pow_u128(x, (self.order() / 2) as u128));
        }
        if !self.is_square(x) {
            return None;
        }
        // Tonelli-Shanks
        let mut odd = self.order() as u128 - 1;
        let mut s = 0u32;
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let z = self.nonzero().find(|&e| !self.is_square(e))?;
        let mut m = s;
        let mut c = self.pow_u128(z, odd);
        let mut t = self.pow_u128(x, odd);
        let mut r = self.pow_u128(x, (odd + 1) / 2);
        while t != Elem::ONE {
            let mut i = 0;
            let mut t2 = t;
            while t2 != Elem::ONE {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        debug_assert_eq!(self.mul(r, r), x);
        Some(r)
    }

    /// Some `y` with `y^2 + y = t` in characteristic 2, when `Tr(t) = 0`.
    fn solve_artin_schreier_2(&self, t: Elem) -> Option<Elem> {
        if self.trace(t) != 0 {
            return None;
        }
        let n = self.n();
        let y = if n % 2 == 1 {
            // half-trace
            let mut acc = Elem::ZERO;
            let mut cur = t;
            for _ in 0..=(n - 1) / 2 {
                acc = self.add(acc, cur);
                cur = self.frobenius(cur, 2);
            }
            acc
        } else {
            let delta = self.elements().find(|&d| self.trace(d) == 1)?;
            let mut acc = Elem::ZERO;
            for i in 0..n {
                let mut inner = Elem::ZERO;
                for j in i + 1..n {
                    inner = self.add(inner, self.frobenius(delta, j));
                }
                acc = self.add(acc, self.mul(inner, self.frobenius(t, i)));
            }
            acc
        };
        debug_assert_eq!(self.add(self.mul(y, y), y), t);
        Some(y)
    }

    /// Roots of `x^2 + a1 x + a0` in the field (a double root is listed once).
    pub fn solve_quadratic(&self, a1: Elem, a0: Elem) -> QuadraticRoots {
        let mut roots = Vec::new();
        if self.p() == 2 {
            if a1.is_zero() {
                roots.push(self.sqrt(a0).expect("squaring is bijective in characteristic 2"));
            } else {
                let a1_inv = self.inv_nonzero(a1);
                let t = self.mul(a0, self.mul(a1_inv, a1_inv));
                if let Some(y) = self.solve_artin_schreier_2(t) {
                    let r = self.mul(a1, y);
                    roots.push(r);
                    roots.push(self.add(r, a1));
                }
            }
        } else {
            let two_inv = self.inv_nonzero(self.from_int(2));
            let disc = self.sub(self.mul(a1, a1), self.mul(self.from_int(4), a0));
            if let Some(s) = self.sqrt(disc) {
                let neg_a1 = self.neg(a1);
                roots.push(self.mul(self.add(neg_a1, s), two_inv));
                if !s.is_zero() {
                    roots.push(self.mul(self.sub(neg_a1, s), two_inv));
                }
            }
        }
        for &r in &roots {
            let v = self.add(self.add(self.mul(r, r), self.mul(a1, r)), a0);
            assert!(v.is_zero(), "quadratic root failed substitution");
        }
        roots.sort();
        roots
    }

    /// Some `y` with `y^p - y = x`, found by exhaustive search.
    pub fn hilbert90_witness(&self, x: Elem) -> Option<Elem> {
        self.elements()
            .find(|&y| self.sub(self.pow_u128(y, self.p() as u128), y) == x)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `gcd(p^k + 1, p^n - 1)` by Euclid.
pub fn gcd_euclid(p: u64, k: u32, n: u32) -> u128 {
    let p = p as u128;
    gcd_u128(p.pow(k) + 1, p.pow(n) - 1)
}

/// Closed form of `gcd(p^k + 1, p^n - 1)`.
pub fn gcd_closed_form(p: u64, k: u32, n: u32) -> u128 {
    let g = gcd_u128(k as u128, n as u128) as u32;
    if p == 2 {
        let g2 = gcd_u128(2 * k as u128, n as u128) as u32;
        ((1u128 << g2) - 1) / ((1u128 << g) - 1)
    } else if (n / g) % 2 == 1 {
        2
    } else {
        (p as u128).pow(g) + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GcdReport {
    pub value: u128,
    pub closed_form: u128,
}

impl GcdReport {
    pub fn agrees(&self) -> bool {
        self.value == self.closed_form
    }
}

pub fn gcd_formula(p: u64, k: u32, n: u32) -> GcdReport {
    GcdReport { value: gcd_euclid(p, k, n), closed_form: gcd_closed_form(p, k, n) }
}
