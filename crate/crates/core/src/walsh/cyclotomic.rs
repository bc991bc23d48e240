//! Exact arithmetic in `Z[zeta_p]`.

use std::fmt;

use crate::error::{Error, Result};

/// `sum coeffs[i] zeta^i` for `i < p - 1`, reduced by `1 + zeta + ... + zeta^(p-1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<i128>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { p, coeffs: vec![0; (p - 1) as usize] }
    }

    pub fn from_int(p: u32, v: i128) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// `zeta^e`.
    pub fn zeta_pow(p: u32, e: u64) -> Self {
        let mut full = vec![0i128; p as usize];
        full[(e % p as u64) as usize] = 1;
        Self::from_full(p, &full)
    }

    /// Reduces `sum full[i] zeta^i` for `i < p`.
    pub fn from_full(p: u32, full: &[i128]) -> Self {
        let m = (p - 1) as usize;
        let top = full.get(m).copied().unwrap_or(0);
        let coeffs = (0..m).map(|i| full.get(i).copied().unwrap_or(0) - top).collect();
        CyclotomicInt { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("cyclotomic integers over p = {} and p = {}", self.p, other.p)))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.mul(other))
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInt { p: self.p, coeffs }
    }

    pub(crate) fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.p, other.p);
        self.coeffs.iter_mut().zip(&other.coeffs).for_each(|(a, b)| *a += b);
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let mut full = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        Self::from_full(self.p, &full)
    }

    /// Complex conjugation, `zeta -> zeta^(p-1)`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            full[(p - i) % p] += a;
        }
        Self::from_full(self.p, &full)
    }

    /// The integer value, if this lies in `Z`.
    pub fn as_rational(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// `|v|^2 = v * conj(v)`.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
