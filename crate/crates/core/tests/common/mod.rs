#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use cboom_core::atlas::{compute_atlas, diff_fixture, PublishedFixture};
use cboom_core::boomtables::{c_bct_def_table, c_bct_naive, c_bct_row, c_bct_system, c_boomerang_uniformity, sandwich_check};
use cboom_core::ffield::gcd_formula;
use cboom_core::funcspace::monomial;
use cboom_core::theorems::{
    gold_bound_check, inverse_binary_verify, inverse_odd_verify, lemma_quadratic_census, mu_c_check,
    trinomial_roots_cm04, trinomial_roots_scan, TrinomialSpec,
};
use cboom_core::walsh::{one_uniform_sum, power_sum, walsh_sums};
use cboom_core::{Elem, Family, Field, FieldSpec, FunctionTable};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of one acceptance criterion or property suite.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    /// failure matches the recorded analysis of an unattainable statement
    pub known_gap: bool,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), known_gap: false }
    }
}

pub fn field(p: u32, n: u32) -> Arc<Field> {
    Field::standard(p, n).unwrap()
}

/// The built-in field when there is one, otherwise the first irreducible monic modulus.
pub fn any_field(p: u32, n: u32) -> Arc<Field> {
    if let Ok(k) = Field::standard(p, n) {
        return k;
    }
    let q = p.pow(n);
    for idx in 0..q {
        let mut m: Vec<u32> = (0..n).map(|i| idx / p.pow(i) % p).collect();
        m.push(1);
        if let Ok(k) = Field::new(FieldSpec { p, n, modulus: m, generator: None }) {
            return Arc::new(k);
        }
    }
    panic!("no irreducible polynomial of degree {n} over Z_{p}");
}

fn is_prime(v: u32) -> bool {
    v >= 2 && (2..v).take_while(|d| d * d <= v).all(|d| v % d != 0)
}

/// Every supported field with `lo < p^n <= hi`: `n >= 2`, and prime fields with `p <= 31`.
pub fn fields_in(lo: u32, hi: u32) -> Vec<Arc<Field>> {
    let mut out = Vec::new();
    for p in (2..=31).filter(|&p| is_prime(p)) {
        for n in 1..=8u32 {
            let Some(q) = p.checked_pow(n) else { break };
            if q > hi {
                break;
            }
            if q > lo {
                out.push(any_field(p, n));
            }
        }
    }
    out.sort_by_key(|k| (k.order(), k.p()));
    out
}

fn set(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

fn fmt_set(v: &BTreeSet<u32>) -> String {
    format!("{:?}", v.iter().collect::<Vec<_>>())
}

// ---------------------------------------------------------------------------
// property suites

/// Ring and field axioms. Triples are exhaustive up to 243 elements; above that,
/// pairs are exhaustive and the third operand runs over a fixed sample.
pub fn field_axioms(max_q: u32) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0usize;
    for k in fields_in(1, max_q) {
        let q = k.order();
        let thirds: Vec<Elem> = if q <= 243 {
            k.elements().collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
            let mut s: Vec<Elem> = (0..k.n()).map(|i| k.pow_u128(k.alpha(), i as u128)).collect();
            s.push(k.neg(Elem::ONE));
            s.extend((0..8).map(|_| Elem(rng.gen_range(0..q))));
            s
        };
        let mut fails = 0usize;
        for x in k.elements() {
            if k.add(x, Elem::ZERO) != x || k.mul(x, Elem::ONE) != x || k.add(x, k.neg(x)) != Elem::ZERO {
                fails += 1;
            }
            if !x.is_zero() && k.mul(x, k.inv(x).unwrap()) != Elem::ONE {
                fails += 1;
            }
            for y in k.elements() {
                let (s, m) = (k.add(x, y), k.mul(x, y));
                if s != k.add(y, x) || m != k.mul(y, x) {
                    fails += 1;
                }
                for &z in &thirds {
                    if k.add(s, z) != k.add(x, k.add(y, z))
                        || k.mul(m, z) != k.mul(x, k.mul(y, z))
                        || k.mul(x, k.add(y, z)) != k.add(m, k.mul(x, z))
                    {
                        fails += 1;
                    }
                }
            }
        }
        if k.inv(Elem::ZERO).is_ok() {
            fails += 1;
        }
        let cert = k.order_certificate();
        if cert.iter().any(|&(_, v)| v == Elem::ONE) || k.multiplicative_order(k.generator()) != Some(q as u64 - 1) {
            fails += 1;
        }
        if fails > 0 {
            bad.push(format!("F_{}^{}: {fails}", k.p(), k.n()));
        }
        count += 1;
    }
    Outcome::new(bad.is_empty(), format!("{count} fields up to {max_q} elements; failures: {bad:?}"))
}

/// Trace additivity, Frobenius invariance and fiber sizes; Hilbert 90 both ways.
pub fn trace_and_hilbert90(max_q: u32) -> (Outcome, Outcome) {
    let mut trace_bad = Vec::new();
    let mut h90_bad = Vec::new();
    let mut count = 0;
    for k in fields_in(1, max_q) {
        let p = k.p();
        let mut fibers = vec![0u32; p as usize];
        for x in k.elements() {
            let tx = k.trace(x);
            fibers[tx as usize] += 1;
            if k.trace(k.frobenius(x, 1)) != tx {
                trace_bad.push(format!("F_{}^{}: Tr(x^p) at {}", p, k.n(), k.format(x)));
            }
            for y in k.elements().step_by(if k.order() > 81 { 7 } else { 1 }) {
                if k.trace(k.add(x, y)) != (tx + k.trace(y)) % p {
                    trace_bad.push(format!("F_{}^{}: additivity", p, k.n()));
                }
            }
            if k.hilbert90_witness(x).is_some() != (tx == 0) {
                h90_bad.push(format!("F_{}^{}: {}", p, k.n(), k.format(x)));
            }
        }
        let want = k.order() / p;
        if fibers.iter().any(|&f| f != want) {
            trace_bad.push(format!("F_{}^{}: fibers {fibers:?}", p, k.n()));
        }
        count += 1;
    }
    trace_bad.truncate(5);
    h90_bad.truncate(5);
    (
        Outcome::new(trace_bad.is_empty(), format!("{count} fields; failures: {trace_bad:?}")),
        Outcome::new(h90_bad.is_empty(), format!("{count} fields; failures: {h90_bad:?}")),
    )
}

/// Every monic quadratic over every field with at most `max_q` elements.
pub fn quadratic_census(max_q: u32) -> Outcome {
    let mut bad = Vec::new();
    let fields = fields_in(1, max_q);
    for k in &fields {
        let v = lemma_quadratic_census(k);
        if !v.pass {
            bad.push(format!("F_{}^{}: {:?}", k.p(), k.n(), v.witnesses.first()));
        }
    }
    Outcome::new(bad.is_empty(), format!("{} fields; failures: {bad:?}", fields.len()))
}

pub fn gcd_closed_forms() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for p in [2u64, 3, 5, 7] {
        for k in 1..=8 {
            for n in 1..=8 {
                count += 1;
                let r = gcd_formula(p, k, n);
                if !r.agrees() {
                    bad.push(format!("p={p} k={k} n={n}: {} vs {}", r.value, r.closed_form));
                }
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{count} triples; failures: {bad:?}"))
}

/// `T_{2l}(w) + 2 = T_l(w)^2` on `F_{3^n}`, `n <= 4`, `l <= 50`.
pub fn chebyshev_doubling() -> Outcome {
    let mut bad = 0;
    let mut count = 0;
    for n in 1..=4 {
        let k = field(3, n);
        let two = k.from_int(2);
        for ell in 0..=50u64 {
            for w in k.elements() {
                let t = k.chebyshev_t(ell, w);
                count += 1;
                if k.add(k.chebyshev_t(2 * ell, w), two) != k.mul(t, t) {
                    bad += 1;
                }
            }
        }
    }
    Outcome::new(bad == 0, format!("{count} (n, l, w) cases; failures: {bad}"))
}

// ---------------------------------------------------------------------------
// value-set reproduction

/// Runs the atlas for each `(family, p, n)` and diffs it against the embedded fixture.
pub fn atlas_grid(jobs: &[(Family, u32, u32)], spot: &[(Family, u32, u32, &[u32])]) -> Outcome {
    let fx = PublishedFixture::load();
    let mut lines = Vec::new();
    let mut pass = true;
    for &(fam, p, n) in jobs {
        let k = field(p, n);
        let r = compute_atlas(fam, &k, false).unwrap();
        let d = diff_fixture(&r, &fx).unwrap();
        pass &= d.pass();
        if !d.pass() {
            lines.push(format!("{}: {:?}", d.key, d.checks));
        }
        for &(sf, sp, sn, want) in spot {
            if sf == fam && sp == p && sn == n && set(&r.value_set) != set(want) {
                pass = false;
                lines.push(format!("{}: got {}, want {}", d.key, fmt_set(&set(&r.value_set)), fmt_set(&set(want))));
            }
        }
    }
    let detail = if lines.is_empty() { format!("{} value sets equal", jobs.len()) } else { lines.join("; ") };
    Outcome::new(pass, detail)
}

pub fn criterion_1() -> Outcome {
    let mut jobs = Vec::new();
    for p in [2, 3] {
        for n in 2..=4 {
            jobs.push((Family::Inverse, p, n));
        }
    }
    let spot: &[(Family, u32, u32, &[u32])] = &[
        (Family::Inverse, 2, 2, &[1]),
        (Family::Inverse, 2, 3, &[1, 2]),
        (Family::Inverse, 2, 4, &[1, 2, 3]),
        (Family::Inverse, 3, 2, &[1, 2]),
        (Family::Inverse, 3, 3, &[1, 2, 3]),
        (Family::Inverse, 3, 4, &[1, 2, 3, 4]),
    ];
    atlas_grid(&jobs, spot)
}

pub fn criterion_2() -> Outcome {
    let jobs: Vec<_> = (1..=3).flat_map(|k| (2..=4).map(move |n| (Family::Gold { k }, 3, n))).collect();
    atlas_grid(&jobs, &[(Family::Gold { k: 2 }, 3, 4, &[1, 2, 4, 72, 73, 81, 82, 90, 91, 100])])
}

pub fn criterion_3() -> Outcome {
    let jobs: Vec<_> = (1..=3).flat_map(|k| (2..=4).map(move |n| (Family::HalfGold { k }, 3, n))).collect();
    atlas_grid(&jobs, &[(Family::HalfGold { k: 2 }, 3, 4, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 18])])
}

/// Largest `cB(1, b)` with `b != 0`.
fn first_row_max(f: &FunctionTable, c: Elem) -> u32 {
    c_bct_row(f, c, Elem::ONE).unwrap().into_iter().skip(1).max().unwrap_or(0)
}

pub fn criterion_4() -> Outcome {
    let jobs: Vec<_> = (2..=4).map(|n| (Family::Square, 3, n)).collect();
    let spot: &[(Family, u32, u32, &[u32])] = &[
        (Family::Square, 3, 2, &[1, 2]),
        (Family::Square, 3, 3, &[1, 2, 3, 4]),
        (Family::Square, 3, 4, &[1, 2, 3, 4]),
    ];
    let sets = atlas_grid(&jobs, spot);
    let mut worst = Vec::new();
    let mut pass = sets.pass;
    for p in [3, 5] {
        for n in 1..=4 {
            let k = field(p, n);
            let f = Family::Square.build(&k).unwrap();
            let mut beta = 0;
            for c in k.nonzero().filter(|&c| c != Elem::ONE) {
                let b1 = first_row_max(&f, c);
                if k.order() <= 81 {
                    // rows a != 0 of a monomial permute row 1
                    pass &= c_boomerang_uniformity(&f, c).unwrap().beta == b1;
                }
                beta = beta.max(b1);
            }
            pass &= beta <= 4;
            worst.push(format!("{}^{}:{beta}", p, n));
        }
    }
    Outcome::new(pass, format!("{}; max beta over c: {}", sets.detail, worst.join(" ")))
}

pub fn criterion_5(include_slow: bool) -> (Outcome, Option<Outcome>) {
    let fx = PublishedFixture::load();
    let mut pass = true;
    let mut parts = Vec::new();
    let mut readings = BTreeSet::new();
    let want = [(2, 2, 2), (3, 4, 3), (4, 6, 7)];
    for (n, minus, plus) in want {
        let k = field(3, n);
        for (u, expect) in [(Elem::ONE, minus), (k.neg(Elem::ONE), plus)] {
            let r = compute_atlas(Family::Dob { u }, &k, false).unwrap();
            let d = diff_fixture(&r, &fx).unwrap();
            pass &= d.pass() && r.global_max == expect;
            for c in &d.checks {
                if c.name == "witnesses" {
                    readings.insert(c.detail.clone());
                }
            }
            parts.push(format!("n={n} {}: {}", if u == Elem::ONE { "-" } else { "+" }, r.global_max));
        }
    }
    let fast = Outcome::new(pass, format!("uniformities {}; {}", parts.join(", "), readings.into_iter().collect::<Vec<_>>().join(" / ")));
    let slow = include_slow.then(|| {
        let k = field(3, 5);
        let mut pass = true;
        let mut parts = Vec::new();
        for (u, expect) in [(Elem::ONE, 6), (k.neg(Elem::ONE), 5)] {
            let r = compute_atlas(Family::Dob { u }, &k, false).unwrap();
            let d = diff_fixture(&r, &fx).unwrap();
            pass &= d.pass() && r.global_max == expect;
            let cs: BTreeSet<Elem> = r.witnesses.iter().map(|&(c, _)| c).collect();
            parts.push(format!("{}: beta {}, {} pairs over {} c", if u == Elem::ONE { "-" } else { "+" }, r.global_max, r.witnesses.len(), cs.len()));
        }
        Outcome::new(pass, parts.join("; "))
    });
    (fast, slow)
}

fn popcount_two(d: u32) -> bool {
    d.count_ones() == 2
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn criterion_6() -> Outcome {
    let k = field(2, 4);
    let inv = Family::Inverse.build(&k).unwrap();
    let beta = c_boomerang_uniformity(&inv, Elem::ONE).unwrap().beta;
    let naive = c_bct_naive(&inv, Elem::ONE).unwrap() == c_bct_system(&inv, Elem::ONE).unwrap();
    let mut pass = beta == 6 && naive;
    let mut tested = Vec::new();
    for n in 2..=4 {
        let k = field(2, n);
        let q = k.order();
        for d in (1..q - 1).filter(|&d| popcount_two(d) && gcd(d, q - 1) == 1) {
            let f = monomial(&k, d as u128);
            let v = sandwich_check(&f).unwrap();
            pass &= v.pass;
            tested.push(format!("x^{d}/F_2^{n}"));
        }
    }
    pass &= !tested.is_empty();
    Outcome::new(pass, format!("inverse over F_2^4 at c = 1: beta {beta}, naive oracle agrees {naive}; sandwich: {}", tested.join(", ")))
}

/// Permutations among the named families over every built-in field with at most 81 elements.
pub fn catalog_permutations() -> Vec<FunctionTable> {
    let mut out = Vec::new();
    for k in fields_in(1, 81) {
        if Field::standard(k.p(), k.n()).is_err() {
            continue;
        }
        let mut fams = vec![Family::Square, Family::Inverse];
        for kk in 1..=3 {
            fams.push(Family::Gold { k: kk });
            fams.push(Family::HalfGold { k: kk });
        }
        fams.push(Family::Dob { u: Elem::ONE });
        fams.push(Family::Dob { u: k.neg(Elem::ONE) });
        for fam in fams {
            if let Ok(f) = fam.build(&k) {
                if f.is_perm() && !out.iter().any(|g: &FunctionTable| Arc::ptr_eq(g.field(), f.field()) && g.values() == f.values()) {
                    out.push(f);
                }
            }
        }
    }
    out
}

pub fn criterion_7() -> Outcome {
    let mut cells = 0usize;
    let mut mismatches = 0usize;
    let fns = catalog_permutations();
    for f in &fns {
        for c in f.field().nonzero() {
            let a = c_bct_system(f, c).unwrap();
            let b = c_bct_def_table(f, c).unwrap();
            cells += a.entries().len();
            mismatches += a.entries().iter().zip(b.entries()).filter(|(x, y)| x != y).count();
        }
    }
    Outcome::new(mismatches == 0 && cells > 0, format!("{} permutations, {cells} cells, {mismatches} mismatches", fns.len()))
}

pub fn criterion_8() -> Outcome {
    // (a) pivot identity
    let k = field(3, 2);
    let q = BigInt::from(k.order());
    let mut fams = vec![Family::Square, Family::Inverse, Family::Dob { u: Elem::ONE }, Family::Dob { u: k.neg(Elem::ONE) }];
    for kk in 1..=3 {
        fams.push(Family::Gold { k: kk });
        fams.push(Family::HalfGold { k: kk });
    }
    let mut pivot_cases = 0;
    let mut pivot_bad = 0;
    for fam in fams {
        let f = fam.build(&k).unwrap();
        for c in k.nonzero() {
            let sums = walsh_sums(&f, c, 2).unwrap();
            for (idx, s) in sums.iter().enumerate() {
                let j = idx as u32 + 1;
                pivot_cases += 1;
                let ok = s.as_rational().is_some_and(|v| {
                    let v = BigInt::from(v);
                    let scale = q.pow(4 * j - 2);
                    &v % &scale == BigInt::from(0) && v / scale == power_sum(&f, c, j).unwrap()
                });
                if !ok {
                    pivot_bad += 1;
                }
            }
        }
    }
    // (b) one-uniform sum: equality for the F_4 inverse
    let k4 = field(2, 2);
    let inv4 = Family::Inverse.build(&k4).unwrap();
    let mut f4_ok = true;
    for c in k4.nonzero().filter(|&c| c != Elem::ONE) {
        let r = one_uniform_sum(&inv4, c).unwrap();
        f4_ok &= r.sum == 256 && r.beta == 1;
    }
    // (b) strictness wherever beta > 1
    let mut strict_total = 0;
    let mut strict_failed = 0;
    let mut strict_bad = Vec::new();
    for (p, n) in [(2, 3), (2, 4), (3, 2), (3, 3)] {
        let k = field(p, n);
        let f = Family::Inverse.build(&k).unwrap();
        let mut bad = 0;
        for c in k.nonzero().filter(|&c| c != Elem::ONE) {
            let r = one_uniform_sum(&f, c).unwrap();
            if r.beta > 1 {
                strict_total += 1;
                if r.sum <= r.bound {
                    bad += 1;
                }
            }
        }
        strict_failed += bad;
        if bad > 0 {
            strict_bad.push(format!("F_{p}^{n}: {bad}"));
        }
    }
    let pass = pivot_bad == 0 && f4_ok && strict_failed == 0;
    let mut o = Outcome::new(
        pass,
        format!(
            "(a) pivot identity {}/{pivot_cases} exact; (b) F_4 inverse sum = 4^4: {f4_ok}; strictness where beta > 1 fails at {strict_failed} of {strict_total} {strict_bad:?}",
            pivot_cases - pivot_bad
        ),
    );
    o.known_gap = !pass && pivot_bad == 0 && f4_ok;
    o
}

/// Root set from the closed-form engine versus the scan, plus substitution and the count rule.
pub fn trinomial_mismatch(k: &Field, spec: TrinomialSpec) -> Option<String> {
    let r = trinomial_roots_cm04(k, &spec).unwrap();
    let scan = trinomial_roots_scan(k, &spec);
    let g = gcd(k.n(), spec.k);
    let allowed = [0, 1, k.p().pow(g) as usize];
    let substitutes = r.roots.iter().all(|&z| spec.eval(k, z).is_zero());
    (r.roots != scan || !substitutes || !allowed.contains(&r.count()))
        .then(|| format!("F_{}^{} k={} A={} B={}", k.p(), k.n(), spec.k, k.format(spec.a), k.format(spec.b)))
}

pub fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let mut exhaustive = 0usize;
    for p in [2, 3, 5] {
        for n in 1..=3 {
            let k = field(p, n);
            for kk in 1..=3 {
                for a in k.nonzero() {
                    for b in k.elements() {
                        exhaustive += 1;
                        if let Some(e) = trinomial_mismatch(&k, TrinomialSpec::new(kk, a, b)) {
                            bad.push(e);
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7269_6e6f);
    let big: Vec<_> = [2, 3, 5].iter().map(|&p| field(p, 4)).collect();
    let random = 256;
    for _ in 0..random {
        let k = &big[rng.gen_range(0..3)];
        let a = Elem(rng.gen_range(1..k.order()));
        let b = Elem(rng.gen_range(0..k.order()));
        if let Some(e) = trinomial_mismatch(k, TrinomialSpec::new(rng.gen_range(1..=3), a, b)) {
            bad.push(e);
        }
    }
    bad.truncate(5);
    Outcome::new(bad.is_empty(), format!("{exhaustive} exhaustive specs + {random} random at n = 4; failures: {bad:?}"))
}

pub struct Criterion10 {
    pub gold: Outcome,
    pub mu: Outcome,
    pub binary: Outcome,
    pub odd: Outcome,
}

pub fn criterion_10() -> Criterion10 {
    // Gold bound
    let mut fails = Vec::new();
    let mut total = 0;
    for n in 2..=4 {
        let k = field(3, n);
        for kk in 1..=3 {
            let mut f = 0;
            for c in k.nonzero().filter(|&c| c != Elem::ONE) {
                total += 1;
                if !gold_bound_check(&k, kk, c).unwrap().pass {
                    f += 1;
                }
            }
            if f > 0 {
                fails.push(format!("n={n} k={kk}: {f}"));
            }
        }
    }
    let mut gold = Outcome::new(fails.is_empty(), format!("{total} instances; failing (n, k): {fails:?}"));
    gold.known_gap = fails == ["n=2 k=1: 1", "n=2 k=2: 2", "n=2 k=3: 1", "n=4 k=1: 9", "n=4 k=3: 9"];

    // mu_c at a = 1
    let mut fails = Vec::new();
    let mut total = 0;
    for n in 2..=3 {
        let k = field(3, n);
        for kk in 1..=2 {
            let mut f = 0;
            for c in k.nonzero().filter(|&c| c != Elem::ONE) {
                total += 1;
                if !mu_c_check(&k, kk, c).unwrap().pass {
                    f += 1;
                }
            }
            if f > 0 {
                fails.push(format!("n={n} k={kk}: {f}"));
            }
        }
    }
    let mut mu = Outcome::new(fails.is_empty(), format!("{total} instances; failing (n, k): {fails:?}"));
    mu.known_gap = !mu.pass;

    // binary inverse iff at n = 4
    let k = field(2, 4);
    let mut failing = Vec::new();
    let mut readings = BTreeSet::new();
    for c in k.nonzero().filter(|&c| c != Elem::ONE) {
        let v = inverse_binary_verify(&k, c).unwrap();
        if !v.pass {
            failing.push(k.format(c));
        }
        for note in v.notes.iter().filter(|n| n.starts_with('[')) {
            readings.insert(format!("{}: {}", k.format(c), note));
        }
    }
    let agree_all = failing.is_empty();
    let reading_summary = {
        let mut per_reading: std::collections::BTreeMap<String, BTreeSet<String>> = Default::default();
        for r in &readings {
            let (c, rest) = r.split_once(": [").unwrap();
            let (label, verdict) = rest.split_once(']').unwrap();
            let entry = per_reading.entry(label.to_string()).or_default();
            if verdict.ends_with("iff fails") {
                entry.insert(c.to_string());
            }
        }
        let want: BTreeSet<String> = failing.iter().cloned().collect();
        let same = per_reading.values().all(|v| *v == want);
        format!(
            "asserted reading [b any, (iii) with c^3]; {} readings of (iii) and of the b quantifier, failing c identical under every reading: {same}",
            per_reading.len()
        )
    };
    let mut binary = Outcome::new(agree_all, format!("iff fails at c = {failing:?}; {reading_summary}"));
    binary.known_gap = failing == ["a^2 + a", "a^2 + a + 1"];

    // odd inverse <= 4 over a != 0
    let mut worst = 0;
    let mut total = 0;
    let mut verdict_fails = Vec::new();
    for p in [3, 5] {
        for n in 1..=3 {
            let k = field(p, n);
            let f = Family::Inverse.build(&k).unwrap();
            for c in k.nonzero().filter(|&c| c != Elem::ONE) {
                total += 1;
                let t = c_bct_system(&f, c).unwrap();
                worst = worst.max(t.max_where(|a, _| !a.is_zero()));
                if !inverse_odd_verify(&k, c).unwrap().pass {
                    verdict_fails.push(format!("F_{p}^{n} c={}", k.format(c)));
                }
            }
        }
    }
    let odd = Outcome::new(
        worst <= 4,
        format!("{total} instances, max entry over a != 0: {worst}; condition (i) sufficiency fails at {verdict_fails:?}"),
    );
    Criterion10 { gold, mu, binary, odd }
}
