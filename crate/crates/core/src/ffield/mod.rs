//! Exact arithmetic in `F_{p^n}` over a polynomial basis.
//!
//! An element is stored as a single integer index in `[0, p^n)` whose base-`p`
//! digits are the polynomial-basis coefficients (digit `i` is the coefficient
//! of `a^i`, where `a` is the class of `x` modulo the defining polynomial).
//! All arithmetic goes through a [`Field`], which owns the lookup tables built
//! at construction time and is immutable afterwards.

mod algebra;
mod config;
pub(crate) mod literal;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use algebra::{gcd_closed_form, gcd_euclid, gcd_formula, GcdReport, QuadraticRoots};
pub use config::{default_modulus, parse_field_spec, parse_field_spec_json};

/// Fields with at most this many elements get log/antilog, negation and trace tables.
const TABLE_LIMIT: u64 = 1 << 20;
/// Fields with at most this many elements also get a full addition table.
const ADD_TABLE_LIMIT: u64 = 512;

/// An element of some [`Field`], identified by its base-`p` index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Parameters defining `F_{p^n}`: the characteristic, the degree, the monic
/// defining polynomial (constant term first) and an optional designated
/// primitive element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<u32>,
}

impl FieldSpec {
    /// Spec using the built-in modulus for `(p, n)` and `a` as generator.
    pub fn standard(p: u32, n: u32) -> Result<FieldSpec> {
        let modulus = default_modulus(p, n).ok_or(Error::MissingModulus { p, n })?;
        Ok(FieldSpec { p, n, modulus, generator: Some(config::default_generator(p, n)) })
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }
}

/// A constructed finite field with its lookup tables.
pub struct Field {
    spec: FieldSpec,
    p: u32,
    n: u32,
    q: u32,
    /// Primitive element backing the log tables (the designated generator when given).
    primitive: Elem,
    log: Vec<u32>,
    exp: Vec<u32>,
    neg: Vec<u32>,
    add: Vec<u16>,
    trace: Vec<u8>,
    /// `p^i` for `i < n`.
    pow_p: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.spec.modulus == other.spec.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Polynomials over Z_p as coefficient vectors, constant term first.
mod zp_poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `num` modulo `den` (den nonzero, any leading coefficient).
    pub fn rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
        let mut r = num.to_vec();
        trim(&mut r);
        let mut d = den.to_vec();
        trim(&mut d);
        let dl = d.len();
        let lead_inv = inv_mod_p(d[dl - 1], p) as u64;
        while r.len() >= dl && !(r.len() == 1 && r[0] == 0) {
            let shift = r.len() - dl;
            let factor = r[r.len() - 1] as u64 * lead_inv % p as u64;
            for (i, &dc) in d.iter().enumerate() {
                let sub = factor * dc as u64 % p as u64;
                let cur = r[shift + i] as u64;
                r[shift + i] = ((cur + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
            if r.len() < dl {
                break;
            }
        }
        r
    }
}

/// Irreducibility by exhaustive search for a monic divisor of degree `1..=n/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    for deg in 1..=n / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut v = idx;
            for _ in 0..deg {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            let r = zp_poly::rem(modulus, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Validates `spec` and builds the field with its tables.
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let FieldSpec { p, n, .. } = spec;
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if !(2..=31).contains(&p) || !(1..=8).contains(&n) {
            return Err(Error::UnsupportedField(format!(
                "need 2 <= p <= 31 and 1 <= n <= 8, got p = {p}, n = {n}"
            )));
        }
        let q64 = spec.order();
        if q64 > u32::MAX as u64 {
            return Err(Error::UnsupportedField(format!(
                "p^n = {q64} exceeds the supported element index range"
            )));
        }
        if spec.modulus.len() != n as usize + 1 {
            return Err(Error::ModulusLength { expected: n as usize + 1, got: spec.modulus.len() });
        }
        if let Some(&c) = spec.modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidParameter(format!("modulus coefficient {c} not reduced mod {p}")));
        }
        if spec.modulus[n as usize] != 1 {
            return Err(Error::NonMonicModulus);
        }
        if !is_irreducible(&spec.modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        let q = q64 as u32;
        let mut pow_p = Vec::with_capacity(n as usize);
        let mut acc = 1u32;
        for _ in 0..n {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let mut field = Field {
            spec: spec.clone(),
            p,
            n,
            q,
            primitive: Elem::ONE,
            log: Vec::new(),
            exp: Vec::new(),
            neg: Vec::new(),
            add: Vec::new(),
            trace: Vec::new(),
            pow_p,
        };
        if let Some(g) = spec.generator {
            if g as u64 >= q64 {
                return Err(Error::ElementOutOfRange { index: g as u64, size: q64 });
            }
            if !field.is_primitive(Elem(g)) {
                return Err(Error::NotPrimitive(field.format(Elem(g))));
            }
            field.primitive = Elem(g);
        } else if q > 2 {
            let g = (1..q)
                .map(Elem)
                .find(|&e| field.is_primitive(e))
                .expect("the multiplicative group of a finite field is cyclic");
            field.primitive = g;
        }
        if q64 <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    /// Field with the built-in modulus for `(p, n)`.
    pub fn standard(p: u32, n: u32) -> Result<Arc<Field>> {
        Ok(Arc::new(Field::new(FieldSpec::standard(p, n)?)?))
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut neg = vec![0u32; q];
        for (i, slot) in neg.iter_mut().enumerate() {
            *slot = self.neg_digits(Elem(i as u32)).0;
        }
        self.neg = neg;
        if q > 1 {
            let mut log = vec![0u32; q];
            let mut exp = vec![0u32; 2 * (q - 1)];
            let mut cur = Elem::ONE;
            for i in 0..q - 1 {
                exp[i] = cur.0;
                exp[i + q - 1] = cur.0;
                log[cur.index()] = i as u32;
                cur = self.mul_schoolbook(cur, self.primitive);
            }
            self.log = log;
            self.exp = exp;
        }
        if self.q as u64 <= ADD_TABLE_LIMIT && self.p != 2 {
            let mut add = vec![0u16; q * q];
            for x in 0..q {
                for y in 0..q {
                    add[x * q + y] = self.add_digits(Elem(x as u32), Elem(y as u32)).0 as u16;
                }
            }
            self.add = add;
        }
        let mut trace = vec![0u8; q];
        for (i, slot) in trace.iter_mut().enumerate() {
            *slot = self.trace_direct(Elem(i as u32)) as u8;
        }
        self.trace = trace;
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements `p^n`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.q as usize
    }

    /// The designated generator, or the smallest primitive element when none was given.
    pub fn generator(&self) -> Elem {
        self.primitive
    }

    /// The class of `x`, i.e. the element printed as `a`.
    pub fn alpha(&self) -> Elem {
        if self.n == 1 {
            // x reduces to minus the constant term of the linear modulus.
            Elem((self.p - self.spec.modulus[0]) % self.p)
        } else {
            Elem(self.p)
        }
    }

    /// Range-checked element constructor.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, size: self.q as u64 })
        }
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    /// Wraps an element for operator-style arithmetic.
    pub fn wrap(&self, e: Elem) -> FieldElement<'_> {
        FieldElement { field: self, elem: e }
    }

    /// Base-`p` digits (polynomial coefficients), constant term first.
    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        let mut idx = 0u32;
        for (i, &c) in coeffs.iter().enumerate().take(self.n as usize) {
            idx += (c % self.p) * self.pow_p[i];
        }
        Elem(idx)
    }

    fn add_digits(&self, x: Elem, y: Elem) -> Elem {
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        for i in 0..self.n as usize {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * self.pow_p[i];
            a /= self.p;
            b /= self.p;
        }
        Elem(out)
    }

    fn neg_digits(&self, x: Elem) -> Elem {
        let mut a = x.0;
        let mut out = 0u32;
        for i in 0..self.n as usize {
            let d = (self.p - a % self.p) % self.p;
            out += d * self.pow_p[i];
            a /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            Elem(x.0 ^ y.0)
        } else if !self.add.is_empty() {
            Elem(self.add[x.index() * self.q as usize + y.index()] as u32)
        } else {
            self.add_digits(x, y)
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 {
            x
        } else if !self.neg.is_empty() {
            Elem(self.neg[x.index()])
        } else {
            self.neg_digits(x)
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    fn mul_schoolbook(&self, x: Elem, y: Elem) -> Elem {
        let n = self.n as usize;
        let p = self.p as u64;
        let a = self.coefficients(x);
        let b = self.coefficients(y);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        // x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        for deg in (n..2 * n - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &mk) in self.spec.modulus.iter().enumerate().take(n) {
                let t = deg - n + k;
                prod[t] = (prod[t] + c * (p - mk as u64)) % p;
            }
        }
        let digits: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.from_coefficients(&digits)
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        if self.log.is_empty() {
            return self.mul_schoolbook(x, y);
        }
        Elem(self.exp[(self.log[x.index()] + self.log[y.index()]) as usize])
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nonzero(x))
    }

    /// Inverse of a nonzero element. Panics on zero.
    #[inline]
    pub fn inv_nonzero(&self, x: Elem) -> Elem {
        assert!(!x.is_zero(), "inverse of zero");
        if self.log.is_empty() {
            return self.pow_u128(x, (self.q - 2) as u128);
        }
        let l = self.log[x.index()];
        Elem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for signed `e`; the exponent is reduced mod `p^n - 1` for nonzero `x`,
    /// and `0^0 = 1`.
    pub fn pow(&self, x: Elem, e: i128) -> Result<Elem> {
        if x.is_zero() {
            return match e.signum() {
                0 => Ok(Elem::ONE),
                1 => Ok(Elem::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let r = e.rem_euclid(self.q as i128 - 1) as u128;
        Ok(self.pow_u128(x, r))
    }

    /// Square-and-multiply with a nonnegative exponent.
    pub fn pow_u128(&self, x: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.is_zero() {
            return Elem::ZERO;
        }
        let e = e % (self.q as u128 - 1);
        let e = if e == 0 { self.q as u128 - 1 } else { e };
        let mut result = Elem::ONE;
        let mut base = x;
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        let k = k % self.n;
        self.pow_u128(x, (self.p as u128).pow(k))
    }

    fn trace_direct(&self, x: Elem) -> u32 {
        let mut acc = Elem::ZERO;
        let mut cur = x;
        for _ in 0..self.n {
            acc = self.add(acc, cur);
            cur = self.pow_u128(cur, self.p as u128);
        }
        debug_assert!(acc.0 < self.p, "absolute trace left the prime subfield");
        acc.0
    }

    /// Absolute trace `sum_{i<n} x^{p^i}` as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: Elem) -> u32 {
        if self.trace.is_empty() {
            self.trace_direct(x)
        } else {
            self.trace[x.index()] as u32
        }
    }

    /// Relative trace into `F_{p^g}`: `sum_{i < n/g} x^{p^{g i}}`.
    pub fn trace_rel(&self, x: Elem, g: u32) -> Result<Elem> {
        if g == 0 || self.n % g != 0 {
            return Err(Error::NotADivisor(g));
        }
        let mut acc = Elem::ZERO;
        let mut cur = x;
        for _ in 0..self.n / g {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur, g);
        }
        Ok(acc)
    }

    /// Whether `x` lies in the subfield `F_{p^g}` (for `g | n`).
    pub fn in_subfield(&self, x: Elem, g: u32) -> bool {
        self.frobenius(x, g) == x
    }

    pub fn is_square(&self, x: Elem) -> bool {
        if self.p == 2 || x.is_zero() {
            return true;
        }
        self.pow_u128(x, ((self.q - 1) / 2) as u128) == Elem::ONE
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut order = self.q as u64 - 1;
        for r in prime_factors(order) {
            while order % r == 0 && self.pow_u128(x, (order / r) as u128) == Elem::ONE {
                order /= r;
            }
        }
        Some(order)
    }

    pub fn is_primitive(&self, x: Elem) -> bool {
        self.multiplicative_order(x) == Some(self.q as u64 - 1)
    }

    /// `(r, g^((q-1)/r))` for each prime `r | q - 1`; `g` is primitive iff no value is 1.
    pub fn order_certificate(&self) -> Vec<(u64, Elem)> {
        let m = self.q as u64 - 1;
        prime_factors(m)
            .into_iter()
            .map(|r| (r, self.pow_u128(self.primitive, (m / r) as u128)))
            .collect()
    }

    /// Discrete log base the table generator, when tables exist.
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.is_zero() || self.log.is_empty() {
            None
        } else {
            Some(self.log[x.index()])
        }
    }

    /// Canonical polynomial form in `a`, highest power first: `2*a^3 + a + 1`.
    pub fn format(&self, x: Elem) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let coeffs = self.coefficients(x);
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// Parses an element literal such as `2*a^3 + a + 1`, `α^2 + 2α`, or `-1`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        literal::parse_element(self, text)
    }

    pub fn check_same(&self, other: &Field) -> Result<()> {
        if std::ptr::eq(self, other) || self == other {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }
}

/// An element bundled with its field, for operator-style arithmetic.
///
/// Operators panic when the operands come from different fields; the `try_*`
/// methods report [`Error::MixedFields`] instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    pub field: &'f Field,
    pub elem: Elem,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.elem))
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.elem))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elem == other.elem
    }
}

impl<'f> FieldElement<'f> {
    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.field.check_same(rhs.field)?;
        Ok(self.field.wrap(self.field.add(self.elem, rhs.elem)))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        self.field.check_same(rhs.field)?;
        Ok(self.field.wrap(self.field.sub(self.elem, rhs.elem)))
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        self.field.check_same(rhs.field)?;
        Ok(self.field.wrap(self.field.mul(self.elem, rhs.elem)))
    }

    pub fn inv(self) -> Result<Self> {
        Ok(self.field.wrap(self.field.inv(self.elem)?))
    }

    pub fn pow(self, e: i128) -> Result<Self> {
        Ok(self.field.wrap(self.field.pow(self.elem, e)?))
    }
}

impl<'f> std::ops::Add for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("mixed fields")
    }
}

impl<'f> std::ops::Sub for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("mixed fields")
    }
}

impl<'f> std::ops::Mul for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("mixed fields")
    }
}

impl<'f> std::ops::Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self {
        self.field.wrap(self.field.neg(self.elem))
    }
}
