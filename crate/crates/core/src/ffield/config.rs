//! Field configuration: built-in moduli and the key-value / JSON spec readers.

use serde::Deserialize;

use super::FieldSpec;
use crate::error::{Error, Result};

/// Built-in defining polynomials (constant term first). All are primitive, so
/// `a` generates the multiplicative group.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
];

fn primitive_root_mod(p: u32) -> u32 {
    let factors = super::prime_factors(p as u64 - 1);
    let pow = |g: u64, mut e: u64| {
        let (mut acc, mut base) = (1u64, g);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc
    };
    (1..p).find(|&g| factors.iter().all(|&r| pow(g as u64, (p as u64 - 1) / r) != 1)).unwrap()
}

/// Index of the default generator: `a` itself.
pub(crate) fn default_generator(p: u32, n: u32) -> u32 {
    if n == 1 {
        primitive_root_mod(p)
    } else {
        p
    }
}

/// Built-in modulus; for `n = 1` this is `x - g` with `g` the least primitive root.
pub fn default_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    if n == 1 && super::is_prime(p as u64) {
        return Some(vec![(p - primitive_root_mod(p)) % p, 1]);
    }
    DEFAULT_MODULI
        .iter()
        .find(|&&(dp, dn, _)| dp == p && dn == n)
        .map(|&(_, _, m)| m.to_vec())
}

#[derive(Deserialize)]
struct RawSpec {
    p: u32,
    n: u32,
    #[serde(default)]
    modulus: Option<Vec<u32>>,
    #[serde(default)]
    generator: Option<u32>,
}

fn finish(raw: RawSpec) -> Result<FieldSpec> {
    if !super::is_prime(raw.p as u64) {
        return Err(Error::NonPrimeCharacteristic(raw.p as u64));
    }
    let (modulus, generator) = match raw.modulus {
        Some(m) => (m, raw.generator),
        None => {
            let m = default_modulus(raw.p, raw.n).ok_or(Error::MissingModulus { p: raw.p, n: raw.n })?;
            (m, Some(raw.generator.unwrap_or(default_generator(raw.p, raw.n))))
        }
    };
    let spec = FieldSpec { p: raw.p, n: raw.n, modulus, generator };
    // full validation (irreducibility, generator order) happens in Field::new
    super::Field::new(spec.clone())?;
    Ok(spec)
}

fn parse_uint(key: &str, value: &str) -> Result<u32> {
    value
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::InvalidParameter(format!("`{key}` expects a nonnegative integer, got `{value}`")))
}

/// Reads `p=3,n=2` style text, with optional `modulus=[2,2,1]` (constant term
/// first) and `generator=<index>`.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return parse_field_spec_json(trimmed);
    }
    let mut pairs = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in trimmed.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' | ';' if depth == 0 => pairs.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    pairs.push(cur);
    let (mut p, mut n, mut modulus, mut generator) = (None, None, None, None);
    for pair in pairs.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{pair}`")))?;
        let key = key.trim();
        match key {
            "p" => p = Some(parse_uint(key, value)?),
            "n" => n = Some(parse_uint(key, value)?),
            "generator" | "g" => generator = Some(parse_uint(key, value)?),
            "modulus" | "m" => {
                let inner = value.trim().trim_start_matches('[').trim_end_matches(']');
                let coeffs = inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_uint(key, s))
                    .collect::<Result<Vec<_>>>()?;
                modulus = Some(coeffs);
            }
            other => return Err(Error::InvalidParameter(format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| Error::InvalidParameter("missing `p`".into()))?;
    let n = n.ok_or_else(|| Error::InvalidParameter("missing `n`".into()))?;
    finish(RawSpec { p, n, modulus, generator })
}

/// Reads `{"p": 3, "n": 2, "modulus": [2, 2, 1], "generator": 3}`.
pub fn parse_field_spec_json(text: &str) -> Result<FieldSpec> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("field spec JSON: {e}")))?;
    finish(raw)
}
