use std::fmt::Write as _;
use std::sync::Arc;

use cboom_core::atlas::{self, compute_atlas_with_progress, diff_fixture, ExportFormat, PublishedFixture, SLOW_THRESHOLD};
use cboom_core::boomtables::{self, c_bct, BctMethod, BoomerangUniformity};
use cboom_core::difftables::{c_ddt, c_diff_uniformity};
use cboom_core::ffield::parse_field_spec;
use cboom_core::theorems;
use cboom_core::walsh::{self, WalshTable};
use cboom_core::{CountTable, Elem, Family, Field, FunctionExpr, FunctionTable, TheoremVerdict};
use rayon::prelude::*;
use serde_json::json;

use crate::args::*;
use crate::{CliError, Outcome};

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Field(c) => field_cmd(c),
        Command::Ddt(c) => ddt_cmd(c),
        Command::Bct(c) => bct_cmd(c),
        Command::Walsh(c) => walsh_cmd(c),
        Command::Verify(c) => verify_cmd(c),
        Command::Atlas(c) => atlas_cmd(c),
    }
}

fn build_field(a: &FieldArgs, default_p: Option<u32>) -> Result<Arc<Field>> {
    let Some(p) = a.p.or(default_p) else { return usage("missing --p") };
    let mut text = format!("p={p},n={}", a.n);
    if let Some(m) = &a.modulus {
        write!(text, ",modulus=[{}]", m.trim().trim_start_matches('[').trim_end_matches(']')).unwrap();
    }
    if let Some(g) = a.generator {
        write!(text, ",generator={g}").unwrap();
    }
    let spec = parse_field_spec(&text)?;
    Ok(Arc::new(Field::new(spec)?))
}

fn parse_family(field: &Field, a: &FuncArgs) -> Result<Option<Family>> {
    let Some(name) = &a.family else { return Ok(None) };
    let u = a.u.as_deref().map(|s| field.parse_elem(s)).transpose()?;
    Ok(Some(Family::from_name(name, a.k, u)?))
}

fn build_function(field: &Arc<Field>, a: &FuncArgs) -> Result<FunctionTable> {
    if let Some(text) = &a.func {
        return Ok(FunctionExpr::parse(text, field)?.tabulate());
    }
    match parse_family(field, a)? {
        Some(fam) => Ok(fam.build(field)?),
        None => usage("one of --func or --family is required"),
    }
}

/// Multipliers in index order; `all` means every `c` other than 0 and 1.
fn select_c(field: &Field, a: &CArgs) -> Result<Vec<Elem>> {
    let mut cs = Vec::new();
    for tok in &a.c {
        if tok.trim() == "all" {
            cs.extend(field.nonzero().filter(|&c| c != Elem::ONE));
        } else {
            cs.push(field.parse_elem(tok)?);
        }
    }
    let excluded = a.exclude.iter().map(|s| field.parse_elem(s)).collect::<std::result::Result<Vec<_>, _>>()?;
    cs.retain(|c| !excluded.contains(c));
    cs.sort();
    cs.dedup();
    if cs.is_empty() {
        return usage("no multipliers selected");
    }
    Ok(cs)
}

fn reject_zero(cs: &[Elem], what: &str) -> Result<()> {
    if cs.iter().any(|c| c.is_zero()) {
        return usage(format!("c = 0 is not allowed for {what}"));
    }
    Ok(())
}

fn check_cost(cost: u128, tier: Tier) -> Result<()> {
    if cost > SLOW_THRESHOLD && tier == Tier::Fast {
        return usage(format!(
            "estimated {cost} operations exceeds the fast-tier limit of {SLOW_THRESHOLD}; pass --tier slow to run it"
        ));
    }
    Ok(())
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_line(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("values serialize") + "\n"
}

fn pretty_table(t: &CountTable) -> String {
    let k = t.field();
    let width = t.entries().iter().max().copied().unwrap_or(0).to_string().len().max(1);
    let mut out = String::new();
    for a in k.elements() {
        let row: Vec<String> = t.row(a).iter().map(|v| format!("{v:>width$}")).collect();
        writeln!(out, "    {}", row.join(" ")).unwrap();
    }
    out
}

fn modulus_text(k: &Field) -> String {
    let terms: Vec<String> = k
        .spec()
        .modulus
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "a".to_string(),
            (1, c) => format!("{c}*a"),
            (i, 1) => format!("a^{i}"),
            (i, c) => format!("{c}*a^{i}"),
        })
        .collect();
    terms.join(" + ")
}

fn field_cmd(cmd: FieldCmd) -> Result<Outcome> {
    let k = build_field(&cmd.field, None)?;
    let g = k.generator();
    let cert = k.order_certificate();
    let primitive = cert.iter().all(|&(_, v)| v != Elem::ONE);
    let order = k.multiplicative_order(g).unwrap_or(0);
    let out = match cmd.format {
        Format::Json => json_line(&json!({
            "spec": k.spec(),
            "order": k.order(),
            "modulus": modulus_text(&k),
            "generator": k.format(g),
            "generator_index": g.0,
            "multiplicative_order": order,
            "certificate": cert.iter().map(|&(r, v)| json!({"prime": r, "power": (k.order() as u64 - 1) / r, "value": k.format(v)})).collect::<Vec<_>>(),
            "primitive": primitive,
        })),
        Format::Csv => {
            let mut s = String::from("prime,exponent,value\n");
            for &(r, v) in &cert {
                writeln!(s, "{r},{},{}", (k.order() as u64 - 1) / r, csv_cell(&k.format(v))).unwrap();
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("F_{}^{} = Z_{}[a] / ({})\n", k.p(), k.n(), k.p(), modulus_text(&k));
            writeln!(s, "  generator: {} (index {}), order {} of {}", k.format(g), g.0, order, k.order() - 1).unwrap();
            for &(r, v) in &cert {
                writeln!(s, "  g^(({})/{r}) = {}", k.order() - 1, k.format(v)).unwrap();
            }
            writeln!(s, "  {}", if primitive { "no value is 1: g is primitive" } else { "g is not primitive" }).unwrap();
            s
        }
    };
    Ok(Outcome { out, ok: primitive })
}

/// `#{x : F(x + a) - c F(x) = b}` by a plain loop.
fn ddt_oracle(f: &FunctionTable, c: Elem) -> Vec<u32> {
    let k = f.field();
    let q = k.size();
    let mut t = vec![0u32; q * q];
    for a in k.elements() {
        for x in k.elements() {
            let b = k.sub(f.eval(k.add(x, a)), k.mul(c, f.eval(x)));
            t[a.index() * q + b.index()] += 1;
        }
    }
    t
}

struct TableResult {
    c: Elem,
    table: CountTable,
    uniformity: serde_json::Value,
    uniformity_value: u32,
    oracle: Option<bool>,
}

fn emit_tables(results: &[TableResult], f: &FunctionTable, fmt: Format, summary: bool) -> String {
    let k = f.field();
    let mut out = String::new();
    match fmt {
        Format::Json => {
            for r in results {
                let mut v = json!({
                    "function": f.label(),
                    "c": k.format(r.c),
                    "uniformity": r.uniformity,
                });
                if !summary {
                    v["table"] = r.table.to_json();
                }
                if let Some(agree) = r.oracle {
                    v["oracle_agrees"] = json!(agree);
                }
                out.push_str(&json_line(&v));
            }
        }
        Format::Csv => {
            if summary {
                out.push_str("c,uniformity,oracle_agrees\n");
                for r in results {
                    let o = r.oracle.map(|b| b.to_string()).unwrap_or_default();
                    writeln!(out, "{},{},{o}", csv_cell(&k.format(r.c)), r.uniformity_value).unwrap();
                }
            } else {
                out.push_str("c,a,b,value\n");
                for r in results {
                    let c = csv_cell(&k.format(r.c));
                    for (a, b, e) in r.table.cells() {
                        writeln!(out, "{c},{},{},{e}", csv_cell(&k.format(a)), csv_cell(&k.format(b))).unwrap();
                    }
                }
            }
        }
        Format::Pretty => {
            for r in results {
                let kind = r.table.kind.name();
                write!(out, "{} of {} over F_{}^{}, c = {}: uniformity {}", kind, f.label(), k.p(), k.n(), k.format(r.c), r.uniformity_value).unwrap();
                if let Some(agree) = r.oracle {
                    write!(out, ", oracle {}", if agree { "agrees" } else { "DISAGREES" }).unwrap();
                }
                out.push('\n');
                if !summary {
                    out.push_str(&pretty_table(&r.table));
                }
            }
        }
    }
    out
}

fn ddt_cmd(cmd: TableCmd) -> Result<Outcome> {
    let k = build_field(&cmd.field, None)?;
    let f = build_function(&k, &cmd.func)?;
    let cs = select_c(&k, &cmd.c)?;
    let q = k.order() as u128;
    check_cost(cs.len() as u128 * q * q, cmd.common.tier)?;
    let results: Vec<TableResult> = cs
        .par_iter()
        .map(|&c| {
            let table = c_ddt(&f, c);
            let delta = c_diff_uniformity(&f, c);
            let oracle = cmd.oracle.then(|| ddt_oracle(&f, c) == table.entries());
            TableResult { c, table, uniformity: json!(delta), uniformity_value: delta, oracle }
        })
        .collect();
    let ok = results.iter().all(|r| r.oracle != Some(false));
    Ok(Outcome { out: emit_tables(&results, &f, cmd.common.format, cmd.summary), ok })
}

fn bct_cmd(cmd: TableCmd) -> Result<Outcome> {
    let k = build_field(&cmd.field, None)?;
    let f = build_function(&k, &cmd.func)?;
    let cs = select_c(&k, &cmd.c)?;
    reject_zero(&cs, "bct")?;
    let method = match cmd.method {
        Method::System => BctMethod::System,
        Method::Definition => BctMethod::Definition,
        Method::Naive => BctMethod::Naive,
    };
    if method == BctMethod::Definition && !f.is_perm() {
        return usage("--method definition needs a permutation");
    }
    let q = k.order() as u128;
    let per_c = if method == BctMethod::Naive || cmd.oracle { q.pow(4) } else { q.pow(3) };
    check_cost(cs.len() as u128 * per_c, cmd.common.tier)?;
    let results = cs
        .par_iter()
        .map(|&c| {
            let table = c_bct(&f, c, method)?;
            let u = BoomerangUniformity::from_table(&table);
            let oracle = if cmd.oracle {
                let mut agree = boomtables::c_bct_naive(&f, c)? == table;
                if f.is_perm() {
                    agree &= boomtables::c_bct_def_table(&f, c)?.entries() == table.entries();
                }
                Some(agree)
            } else {
                None
            };
            Ok(TableResult { c, uniformity: u.to_json(&k), uniformity_value: u.beta, table, oracle })
        })
        .collect::<std::result::Result<Vec<_>, cboom_core::Error>>()?;
    let ok = results.iter().all(|r| r.oracle != Some(false));
    Ok(Outcome { out: emit_tables(&results, &f, cmd.common.format, cmd.summary), ok })
}

fn verdict_out(verdicts: &[TheoremVerdict], fmt: Format) -> String {
    let mut out = String::new();
    match fmt {
        Format::Json => {
            for v in verdicts {
                out.push_str(&v.to_json_line());
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("theorem,params,pass,witnesses,notes\n");
            for v in verdicts {
                let params: Vec<String> = v.params.iter().map(|(a, b)| format!("{a}={b}")).collect();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_cell(&v.theorem),
                    csv_cell(&params.join(";")),
                    v.pass,
                    csv_cell(&v.witnesses.join(" | ")),
                    csv_cell(&v.notes.join(" | "))
                )
                .unwrap();
            }
        }
        Format::Pretty => {
            for v in verdicts {
                let params: Vec<String> = v.params.iter().map(|(a, b)| format!("{a}={b}")).collect();
                writeln!(out, "{} {} [{}]", if v.pass { "PASS" } else { "FAIL" }, v.theorem, params.join(", ")).unwrap();
                for w in &v.witnesses {
                    writeln!(out, "    witness: {w}").unwrap();
                }
                for n in &v.notes {
                    writeln!(out, "    note: {n}").unwrap();
                }
            }
        }
    }
    out
}

fn walsh_verdicts(f: &FunctionTable, c: Elem, oracle: bool) -> cboom_core::Result<Vec<TheoremVerdict>> {
    let k = f.field();
    let q = num_bigint_q(k);
    let sums = walsh::walsh_sums(f, c, 2)?;
    let mut pivot = TheoremVerdict::new("walsh-pivot")
        .param("p", k.p())
        .param("n", k.n())
        .param("function", f.label())
        .param("c", k.format(c));
    for (idx, s) in sums.iter().enumerate() {
        let j = idx as u32 + 1;
        let want = walsh::power_sum(f, c, j)?;
        match s.as_rational() {
            None => pivot.fail(format!("S_{j} is not rational: {s}")),
            Some(v) => {
                let scale = q.pow(4 * j - 2);
                let v = num_bigint::BigInt::from(v);
                if &v % &scale != num_bigint::BigInt::from(0) || v.clone() / &scale != want {
                    pivot.fail(format!("j = {j}: S_j = {v}, q^(4j-2) * sum n_F^j = {}", want * scale));
                } else {
                    pivot.note(format!("j = {j}: S_j / q^{} = {want}", 4 * j - 2));
                }
            }
        }
        if oracle && (j == 1 || k.order() <= 9) {
            let direct = walsh::walsh_sum_direct(f, c, j as usize)?;
            if &direct != s {
                pivot.fail(format!("j = {j}: grouped sum {s} differs from direct enumeration {direct}"));
            } else {
                pivot.note(format!("j = {j}: direct enumeration agrees"));
            }
        }
    }
    let mut out = vec![pivot];
    if c != Elem::ONE {
        let r = walsh::one_uniform_sum(f, c)?;
        let mut v = TheoremVerdict::new("walsh-one-uniform")
            .param("p", k.p())
            .param("n", k.n())
            .param("function", f.label())
            .param("c", k.format(c));
        v.note(format!("sum = {}, p^(4n) = {}, beta = {}, zero cells of n_F = {}", r.sum, r.bound, r.beta, r.zero_cells));
        if !r.consistent() {
            v.fail(format!(
                "sum {} p^(4n) while beta = {}",
                match r.sum.cmp(&r.bound) {
                    std::cmp::Ordering::Less => "<",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Greater => ">",
                },
                r.beta
            ));
        }
        out.push(v);
    }
    Ok(out)
}

fn num_bigint_q(k: &Field) -> num_bigint::BigInt {
    num_bigint::BigInt::from(k.order())
}

fn walsh_cmd(cmd: WalshCmd) -> Result<Outcome> {
    let k = build_field(&cmd.field, None)?;
    let f = build_function(&k, &cmd.func)?;
    let cs = select_c(&k, &cmd.c)?;
    reject_zero(&cs, "walsh")?;
    let q = k.order() as u128;
    check_cost(cs.len() as u128 * q.pow(4), cmd.common.tier)?;
    let per_c = cs
        .par_iter()
        .map(|&c| walsh_verdicts(&f, c, cmd.oracle))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let verdicts: Vec<TheoremVerdict> = per_c.into_iter().flatten().collect();
    let mut out = String::new();
    if !cmd.no_transform {
        let wt = WalshTable::new(&f);
        match cmd.common.format {
            Format::Json => out.push_str(&json_line(&json!({ "function": f.label(), "walsh": wt.to_json() }))),
            Format::Csv => {
                out.push_str("a,b,coefficients\n");
                for a in k.elements() {
                    for b in k.elements() {
                        let cs: Vec<String> = wt.get(a, b).coeffs().iter().map(i128::to_string).collect();
                        writeln!(out, "{},{},{}", csv_cell(&k.format(a)), csv_cell(&k.format(b)), cs.join(";")).unwrap();
                    }
                }
            }
            Format::Pretty => {
                writeln!(out, "Walsh transform of {} over F_{}^{} (rows a, columns b)", f.label(), k.p(), k.n()).unwrap();
                for a in k.elements() {
                    let row: Vec<String> = k.elements().map(|b| wt.get(a, b).to_string()).collect();
                    writeln!(out, "    {}", row.join("  ")).unwrap();
                }
            }
        }
    }
    out.push_str(&verdict_out(&verdicts, cmd.common.format));
    Ok(Outcome { out, ok: verdicts.iter().all(|v| v.pass) })
}

fn default_p(t: Theorem) -> Option<u32> {
    match t {
        Theorem::GoldBound | Theorem::MuC | Theorem::InverseOdd => Some(3),
        Theorem::InverseBinary => Some(2),
        _ => None,
    }
}

fn need_k(cmd: &VerifyCmd) -> Result<u32> {
    cmd.func.k.map_or_else(|| usage("this verifier needs --k"), Ok)
}

fn need_d(cmd: &VerifyCmd) -> Result<u128> {
    cmd.d.map_or_else(|| usage("this verifier needs --d"), Ok)
}

fn verify_cmd(cmd: VerifyCmd) -> Result<Outcome> {
    let k = build_field(&cmd.field, default_p(cmd.theorem))?;
    let q = k.order() as u128;
    let one = |v: cboom_core::Result<TheoremVerdict>| -> Result<Vec<TheoremVerdict>> { Ok(vec![v?]) };
    let verdicts = match cmd.theorem {
        Theorem::QuadraticCensus => {
            check_cost(q.pow(3), cmd.common.tier)?;
            vec![theorems::lemma_quadratic_census(&k)]
        }
        Theorem::BetaMinus1 => {
            let f = build_function(&k, &cmd.func)?;
            check_cost(q.pow(3), cmd.common.tier)?;
            one(boomtables::beta_minus1_vs_delta(&f))?
        }
        Theorem::Sandwich => {
            let f = build_function(&k, &cmd.func)?;
            check_cost(q.pow(3), cmd.common.tier)?;
            one(boomtables::sandwich_check(&f))?
        }
        t => {
            let cs = select_c(&k, &cmd.c)?;
            reject_zero(&cs, "this verifier")?;
            check_cost(cs.len() as u128 * q.pow(3), cmd.common.tier)?;
            let job: Box<dyn Fn(Elem) -> cboom_core::Result<TheoremVerdict> + Sync> = match t {
                Theorem::GoldBound => {
                    let kk = need_k(&cmd)?;
                    Box::new(move |c| theorems::gold_bound_check(&k, kk, c))
                }
                Theorem::MuC => {
                    let kk = need_k(&cmd)?;
                    Box::new(move |c| theorems::mu_c_check(&k, kk, c))
                }
                Theorem::InverseBinary => Box::new(|c| theorems::inverse_binary_verify(&k, c)),
                Theorem::InverseOdd => Box::new(|c| theorems::inverse_odd_verify(&k, c)),
                Theorem::MonomialShift => {
                    let d = need_d(&cmd)?;
                    Box::new(move |c| boomtables::monomial_shift_check(&k, d, c))
                }
                Theorem::MonomialInverseDdt => {
                    let d = need_d(&cmd)?;
                    Box::new(move |c| cboom_core::difftables::monomial_inverse_ddt_check(&k, d, c))
                }
                Theorem::ZeroRow => {
                    let f = build_function(&k, &cmd.func)?;
                    Box::new(move |c| boomtables::zero_row_check(&f, c))
                }
                _ => unreachable!("handled above"),
            };
            cs.par_iter().map(|&c| job(c)).collect::<std::result::Result<Vec<_>, _>>()?
        }
    };
    let ok = verdicts.iter().all(|v| v.pass);
    Ok(Outcome { out: verdict_out(&verdicts, cmd.common.format), ok })
}

fn atlas_cmd(cmd: AtlasCmd) -> Result<Outcome> {
    let k = build_field(&cmd.field, Some(3))?;
    if cmd.func.func.is_some() {
        return usage("atlas works on named families; use --family");
    }
    let Some(family) = parse_family(&k, &cmd.func)? else { return usage("atlas needs --family") };
    check_cost(atlas::atlas_cost(&k), cmd.common.tier)?;
    let progress = |done: usize, total: usize| {
        if cmd.progress {
            eprintln!("c {done}/{total}");
        }
    };
    let record = compute_atlas_with_progress(family, &k, cmd.include_zero, &progress)?;
    let fmt = match cmd.common.format {
        Format::Json => ExportFormat::Json,
        Format::Csv => ExportFormat::Csv,
        Format::Pretty => ExportFormat::Pretty,
    };
    let mut out = record.export(fmt);
    let mut ok = true;
    if cmd.expect == Some(Expect::Paper) {
        let diff = diff_fixture(&record, &PublishedFixture::load())?;
        ok = diff.pass();
        match cmd.common.format {
            Format::Json => out.push_str(&json_line(&diff.to_json())),
            Format::Csv => {
                for c in &diff.checks {
                    writeln!(out, "check,{},{},{}", csv_cell(&c.name), c.pass, csv_cell(&c.detail)).unwrap();
                }
                for n in &diff.notes {
                    writeln!(out, "note,,,{}", csv_cell(n)).unwrap();
                }
            }
            Format::Pretty => {
                writeln!(out, "comparison with published data ({}): {}", diff.key, if ok { "PASS" } else { "FAIL" }).unwrap();
                for c in &diff.checks {
                    writeln!(out, "  [{}] {}: {}", if c.pass { "ok" } else { "mismatch" }, c.name, c.detail).unwrap();
                }
                for n in &diff.notes {
                    writeln!(out, "  note: {n}").unwrap();
                }
            }
        }
    }
    Ok(Outcome { out, ok })
}
