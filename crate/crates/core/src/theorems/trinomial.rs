//! Roots of linearized trinomials `z^(p^k) - A z - B`.

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrinomialSpec {
    pub k: u32,
    pub a: Elem,
    pub b: Elem,
}

impl TrinomialSpec {
    pub fn new(k: u32, a: Elem, b: Elem) -> Self {
        TrinomialSpec { k, a, b }
    }

    pub fn eval(&self, field: &Field, z: Elem) -> Elem {
        field.sub(field.sub(field.frobenius(z, self.k), field.mul(self.a, z)), self.b)
    }
}

/// How the roots were produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootPath {
    /// `m = 1`: scanned exhaustively
    Scan,
    /// `alpha_{m-1} != 1`
    Unique,
    /// `alpha_{m-1} = 1`, `beta_{m-1} != 0`
    Empty,
    /// base root from the relative-trace formula
    TraceFormula,
    /// base root from solving the `F_p`-linear system
    LinearSolve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialRoots {
    pub g: u32,
    pub m: u32,
    /// `(alpha_{m-1}, beta_{m-1})`, absent for `m = 1`
    pub alpha_beta: Option<(Elem, Elem)>,
    pub roots: Vec<Elem>,
    pub path: RootPath,
}

impl TrinomialRoots {
    pub fn count(&self) -> usize {
        self.roots.len()
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `sum_{i=lo}^{hi} p^(k i)` reduced modulo `q - 1`, the period of every nonzero power.
fn geometric(field: &Field, k: u32, lo: u32, hi: u32) -> u128 {
    let m = field.order() as u128 - 1;
    let step = (0..k).fold(1u128, |acc, _| acc * field.p() as u128 % m.max(1));
    let mut term = (0..lo).fold(1u128, |acc, _| acc * step % m.max(1));
    let mut sum = 0u128;
    for _ in lo..=hi {
        sum = (sum + term) % m.max(1);
        term = term * step % m.max(1);
    }
    sum
}

/// `(alpha_r, beta_r)` with `z^(p^(k(r+1))) = alpha_r z + beta_r` modulo the trinomial.
pub fn alpha_beta(field: &Field, spec: &TrinomialSpec, r: u32) -> (Elem, Elem) {
    let alpha = field.pow_u128(spec.a, geometric(field, spec.k, 0, r));
    let mut beta = Elem::ZERO;
    for i in 0..=r {
        let s_i = if i == r { 0 } else { geometric(field, spec.k, i + 1, r) };
        let term = field.mul(field.pow_u128(spec.a, s_i), field.frobenius(spec.b, spec.k * i));
        beta = field.add(beta, term);
    }
    (alpha, beta)
}

/// Every `z` with `z^(p^k) - A z - B = 0`, by scanning the field.
pub fn trinomial_roots_scan(field: &Field, spec: &TrinomialSpec) -> Vec<Elem> {
    field.elements().filter(|&z| spec.eval(field, z).is_zero()).collect()
}

/// The relative-trace base root `x = (1/Tr_g(e)) sum_i (sum_{j<=i} e^(p^(kj))) A^(t_i) B^(p^(ki))`.
fn trace_formula_root(field: &Field, spec: &TrinomialSpec, g: u32, m: u32) -> Option<Elem> {
    let n = field.n();
    let e = field.nonzero().find(|&e| !field.trace_rel(e, g).map(|t| t.is_zero()).unwrap_or(true))?;
    let tr = field.trace_rel(e, g).ok()?;
    let mut acc = Elem::ZERO;
    let mut partial = Elem::ZERO;
    for i in 0..m {
        partial = field.add(partial, field.frobenius(e, spec.k * i));
        let t_i = geometric(field, n, i + 1, m - 1);
        let term = field.mul(field.mul(partial, field.pow_u128(spec.a, t_i)), field.frobenius(spec.b, spec.k * i));
        acc = field.add(acc, term);
    }
    Some(field.mul(acc, field.inv_nonzero(tr)))
}

/// Coordinates of `L(z) = z^(p^k) - A z` on the basis `1, a, a^2, ...`, solved by elimination over `F_p`.
fn linear_solve_root(field: &Field, spec: &TrinomialSpec) -> Option<Elem> {
    let p = field.p() as i64;
    let n = field.n() as usize;
    let basis: Vec<Elem> = (0..n).map(|i| field.from_coefficients(&unit(n, i))).collect();
    // augmented rows: one per coordinate, columns = basis images, last = B
    let images: Vec<Vec<u32>> = basis
        .iter()
        .map(|&v| field.coefficients(field.sub(field.frobenius(v, spec.k), field.mul(spec.a, v))))
        .collect();
    let rhs = field.coefficients(spec.b);
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            let mut row: Vec<i64> = (0..n).map(|c| images[c][r] as i64).collect();
            row.push(rhs[r] as i64);
            row
        })
        .collect();
    let inv = |v: i64| (1..p).find(|&w| v * w % p == 1).unwrap();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(sel) = (r..n).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(r, sel);
        let f = inv(rows[r][c]);
        rows[r].iter_mut().for_each(|v| *v = *v * f % p);
        for i in 0..n {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for j in 0..=n {
                    rows[i][j] = ((rows[i][j] - t * rows[r][j]) % p + p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] % p != 0) {
        return None;
    }
    let mut coords = vec![0u32; n];
    for (i, &c) in pivots.iter().enumerate() {
        coords[c] = rows[i][n] as u32;
    }
    let mut z = Elem::ZERO;
    for (c, &v) in coords.iter().enumerate() {
        z = field.add(z, field.mul(field.from_int(v as i64), basis[c]));
    }
    Some(z)
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Root set of `z^(p^k) - A z - B` via the `alpha_r`/`beta_r` recurrences.
pub fn trinomial_roots_cm04(field: &Field, spec: &TrinomialSpec) -> Result<TrinomialRoots> {
    if spec.a.is_zero() {
        return Err(Error::InvalidParameter("A must be nonzero".into()));
    }
    if spec.k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = field.n();
    let g = gcd(n, spec.k);
    let m = n / g;
    if m == 1 {
        let roots = trinomial_roots_scan(field, spec);
        return Ok(TrinomialRoots { g, m, alpha_beta: None, roots, path: RootPath::Scan });
    }
    let (alpha, beta) = alpha_beta(field, spec, m - 1);
    let (mut roots, path) = if alpha != Elem::ONE {
        let z = field.mul(beta, field.inv_nonzero(field.sub(Elem::ONE, alpha)));
        (vec![z], RootPath::Unique)
    } else if !beta.is_zero() {
        (Vec::new(), RootPath::Empty)
    } else {
        let (base, path) = match trace_formula_root(field, spec, g, m) {
            Some(x) if spec.eval(field, x).is_zero() => (x, RootPath::TraceFormula),
            _ => (
                linear_solve_root(field, spec).expect("alpha = 1, beta = 0 guarantees a root"),
                RootPath::LinearSolve,
            ),
        };
        let tau = field
            .nonzero()
            .find(|&t| field.frobenius(t, spec.k) == field.mul(spec.a, t))
            .expect("alpha = 1 makes A a (p^k - 1)-th power");
        let roots = field
            .elements()
            .filter(|&d| field.in_subfield(d, g))
            .map(|d| field.add(base, field.mul(d, tau)))
            .collect();
        (roots, path)
    };
    roots.sort();
    roots.dedup();
    for &z in &roots {
        assert!(spec.eval(field, z).is_zero(), "trinomial root failed substitution");
    }
    Ok(TrinomialRoots { g, m, alpha_beta: Some((alpha, beta)), roots, path })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_example() {
        let k = Field::standard(3, 2).unwrap();
        let minus_one = k.neg(Elem::ONE);
        for d in k.elements() {
            let spec = TrinomialSpec::new(1, minus_one, k.neg(d));
            let r = trinomial_roots_cm04(&k, &spec).unwrap();
            let expect = if k.in_subfield(d, 1) { 3 } else { 0 };
            assert_eq!(r.count(), expect, "d = {}", k.format(d));
            assert_eq!(r.roots, trinomial_roots_scan(&k, &spec));
        }
    }

    #[test]
    fn homogeneous_case_contains_zero() {
        let k = Field::standard(3, 2).unwrap();
        let r = trinomial_roots_cm04(&k, &TrinomialSpec::new(1, k.neg(Elem::ONE), Elem::ZERO)).unwrap();
        assert!(r.roots.contains(&Elem::ZERO));
        assert_eq!(r.count(), 3);
    }

    #[test]
    fn zero_a_rejected() {
        let k = Field::standard(2, 3).unwrap();
        assert!(trinomial_roots_cm04(&k, &TrinomialSpec::new(1, Elem::ZERO, Elem::ONE)).is_err());
    }

    #[test]
    fn agrees_with_scan_on_small_fields() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
            let k = Field::standard(p, n).unwrap();
            for kk in 1..=3 {
                for a in k.nonzero() {
                    for b in k.elements() {
                        let spec = TrinomialSpec::new(kk, a, b);
                        let r = trinomial_roots_cm04(&k, &spec).unwrap();
                        assert_eq!(r.roots, trinomial_roots_scan(&k, &spec));
                    }
                }
            }
        }
    }
}
