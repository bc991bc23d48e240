mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::Outcome;

struct Line {
    label: String,
    outcome: Outcome,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Line {
    fn pass(&self) -> bool {
        self.outcome.pass && self.limit.map_or(true, |l| self.elapsed < l)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn line(label: &str, outcome: Outcome, elapsed: Duration, limit_s: Option<u64>) -> Line {
    Line { label: label.to_string(), outcome, elapsed, limit: limit_s.map(Duration::from_secs) }
}

fn main() -> ExitCode {
    let strict = std::env::var("CBOOM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut lines = Vec::new();

    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let (o, t) = timed(|| single.install(common::criterion_1));
    lines.push(line("criterion 1", o, t, Some(30)));

    let (o, t) = timed(common::criterion_2);
    lines.push(line("criterion 2", o, t, Some(60)));
    let (o, t) = timed(common::criterion_3);
    lines.push(line("criterion 3", o, t, Some(60)));
    let (o, t) = timed(common::criterion_4);
    lines.push(line("criterion 4", o, t, None));

    let ((fast, _), t) = timed(|| common::criterion_5(false));
    lines.push(line("criterion 5 (fast tier)", fast, t, Some(120)));
    let ((_, slow), t) = timed(|| common::criterion_5(true));
    lines.push(line("criterion 5 (slow tier, F_3^5)", slow.unwrap(), t, None));

    let (o, t) = timed(common::criterion_6);
    lines.push(line("criterion 6", o, t, None));
    let (o, t) = timed(common::criterion_7);
    lines.push(line("criterion 7", o, t, None));
    let (o, t) = timed(common::criterion_8);
    lines.push(line("criterion 8", o, t, None));
    let (o, t) = timed(common::criterion_9);
    lines.push(line("criterion 9", o, t, None));

    let (c10, t) = timed(common::criterion_10);
    let parts = [
        ("gold bound", c10.gold),
        ("mu_c at a = 1", c10.mu),
        ("binary inverse iff, n = 4", c10.binary),
        ("odd inverse <= 4", c10.odd),
    ];
    let all = parts.iter().all(|(_, o)| o.pass);
    let gaps_only = parts.iter().all(|(_, o)| o.pass || o.known_gap);
    let summary = parts
        .iter()
        .map(|(n, o)| format!("{n} {}", if o.pass { "holds" } else { "fails" }))
        .collect::<Vec<_>>()
        .join(", ");
    let mut head = Outcome::new(all, summary);
    head.known_gap = !all && gaps_only;
    lines.push(line("criterion 10", head, t, None));
    for (name, o) in parts {
        lines.push(line(&format!("criterion 10 / {name}"), o, Duration::ZERO, None));
    }

    let (o11, t) = timed(|| {
        let (trace, h90) = common::trace_and_hilbert90(729);
        let parts = [
            ("field axioms", common::field_axioms(729)),
            ("trace", trace),
            ("Hilbert 90", h90),
            ("quadratic census", common::quadratic_census(243)),
            ("gcd closed forms", common::gcd_closed_forms()),
            ("Chebyshev doubling", common::chebyshev_doubling()),
        ];
        let pass = parts.iter().all(|(_, o)| o.pass);
        let detail = parts.iter().map(|(n, o)| format!("{n}: {}", o.detail)).collect::<Vec<_>>().join("; ");
        Outcome::new(pass, detail)
    });
    lines.push(line("criterion 11", o11, t, Some(60)));

    let mut unexpected = 0;
    let mut gaps = 0;
    for l in &lines {
        let verdict = if l.pass() { "PASS" } else { "FAIL" };
        let over = match l.limit {
            Some(lim) if l.elapsed >= lim => format!(" over the {}s limit;", lim.as_secs()),
            _ => String::new(),
        };
        let tag = if !l.pass() && l.outcome.known_gap && l.limit.map_or(true, |lim| l.elapsed < lim) {
            gaps += 1;
            " [known gap]"
        } else {
            if !l.pass() && !l.label.starts_with("criterion 10 /") {
                unexpected += 1;
            }
            ""
        };
        println!("{}: {verdict}{tag} ({:.2}s){over} {}", l.label, l.elapsed.as_secs_f64(), l.outcome.detail);
    }
    println!("{} lines, {gaps} known gaps, {unexpected} unexpected failures", lines.len());
    if unexpected > 0 || (strict && gaps > 0) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
