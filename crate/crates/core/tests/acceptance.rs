//! Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every check is exact; nothing is sampled or skipped.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use qpartition::genfun::{self, compare, Form};
use qpartition::moves::{compose, decompose, enumerate_decompositions};
use qpartition::partitions::{check_at_most_twice, enumerate};
use qpartition::ppoly::{self, PKey, PTable};
use qpartition::{appendix, worked, BiSeries, KrVariant, Result};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: Vec::new() }
    }

    fn with(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

fn appendix_reproduction() -> Result<Outcome> {
    let rows = appendix::entries()?;
    let diffs = appendix::verify(&rows)?;
    let summary = format!("{} table rows, {} disagreeing values", rows.len(), diffs.len());
    Ok(Outcome::new(diffs.is_empty(), summary).with(diffs.iter().map(|d| d.to_string()).collect()))
}

fn oracle_calibration() -> Result<Outcome> {
    let mut table = PTable::new();
    let (mut keys, mut bad) = (0, Vec::new());
    for m3 in 0..=2i64 {
        for m1 in 0..=5i64 {
            for m2 in 0..=5i64 {
                if m1 + m2 + 2 * m3 > 5 {
                    continue;
                }
                for s in 0..=14 {
                    for parity in [0, 1] {
                        keys += 1;
                        let rec = table.p_parity(PKey::new(m1, m2, m3, s, parity))?;
                        let orc = ppoly::p_oracle(m1, m2, m3, s, parity)?;
                        if rec != orc {
                            bad.push(format!("P{parity}({m1},{m2},{m3},{s}): recursion {rec} / oracle {orc}"));
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("{keys} keys, {} disagreements", bad.len())).with(bad))
}

fn three_forms() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut pass = true;
    let mut record = |what: String, r: genfun::CompareReport| {
        pass &= r.is_equal();
        lines.push(format!("{what}: {r}"));
    };
    for v in KrVariant::ALL {
        let brute = genfun::kr_brute(v, 30, 10);
        record(format!("{v} brute vs alternating"), compare(&brute, &genfun::kr_alternating(v, 30, 10)));
        record(format!("{v} brute vs positive"), compare(&brute, &genfun::kr_positive(v, 30, 10)?));
        let wide = genfun::kr_brute(v, 40, 12);
        record(format!("{v} brute vs alternating (wide)"), compare(&wide, &genfun::kr_alternating(v, 40, 12)));
    }
    Ok(Outcome::new(pass, "brute = alternating = positive on q <= 30, t <= 10; alternating on q <= 40, t <= 12").with(lines))
}

fn products() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut pass = true;
    for v in KrVariant::ALL {
        let r = compare(&genfun::kr_t_marginal(v, Form::Alternating, 60)?, &genfun::product_side(v, 60));
        pass &= r.is_equal();
        lines.push(format!("{v}: {r}"));
    }
    let r = compare(&genfun::kr_t_marginal(KrVariant::DPrime, Form::Alternating, 60)?, &genfun::kr2_product_folded(60));
    pass &= r.is_equal();
    lines.push(format!("KR2 folded: {r}"));
    Ok(Outcome::new(pass, "t = 1 specializations against their products to q^60").with(lines))
}

fn bijection() -> Result<Outcome> {
    const MAX: u32 = 25;
    let mut bad = Vec::new();
    let mut seen = 0usize;
    for n in 0..=MAX {
        for lambda in enumerate(n, None, check_at_most_twice) {
            seen += 1;
            let d = decompose(&lambda)?;
            let mu = d.mu().parts();
            let theta = d.theta().parts();
            let ok = compose(&d)? == lambda
                && lambda.weight() == d.base().parts().weight() + d.mu().weight() + d.theta().weight()
                && mu.windows(2).all(|w| w[0] <= w[1])
                && mu.iter().all(|x| x % 3 == 0)
                && theta.windows(2).all(|w| w[0] <= w[1])
                && theta[..d.n11()].iter().all(|&x| x == 0);
            if !ok {
                bad.push(format!("{lambda}: {d}"));
            }
        }
    }
    let triples = enumerate_decompositions(MAX as u64)?;
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for d in &triples {
        let lambda = compose(d)?;
        if decompose(&lambda)? != *d {
            bad.push(format!("triple not recovered: {d}"));
        }
        *counts.entry((d.weight() as usize, lambda.len())).or_default() += 1;
    }
    let h = genfun::h_brute(MAX as usize, MAX as usize);
    for (m, n, c) in h.terms() {
        let got = counts.remove(&(n, m)).unwrap_or(0);
        if BigInt::from(got) != *c {
            bad.push(format!("h({n},{m}) = {c} but {got} triples"));
        }
    }
    for ((n, m), got) in counts {
        bad.push(format!("{got} triples at ({n},{m}) where h is 0"));
    }
    let summary = format!("{seen} partitions, {} triples, {} failures", triples.len(), bad.len());
    Ok(Outcome::new(bad.is_empty(), summary).with(bad))
}

fn worked_examples() -> Result<Outcome> {
    let checks = worked::all()?;
    let pass = checks.iter().all(|c| c.ok);
    let lines = checks
        .iter()
        .map(|c| format!("{} {}: {}", if c.ok { "ok" } else { "FAILED" }, c.name, c.detail))
        .collect();
    Ok(Outcome::new(pass, format!("{} examples", checks.len())).with(lines))
}

fn closed_forms() -> Result<Outcome> {
    let mut lines = Vec::new();
    let grid = ppoly::closed_form_grid(6, 3);
    for form in &grid {
        let (m1, m2, m3, s) = form.key();
        let (got, want) = (form.evaluate()?, ppoly::p(m1, m2, m3, s)?);
        if got != want {
            lines.push(format!("{form:?}: formula {got} / recursion {want}"));
        }
    }
    let pass = lines.is_empty();
    let report = ppoly::printed_exponent_report(6, 3)?;
    lines.push(format!("printed block exponent disagrees with the recursion at {} parameter sets", report.len()));
    lines.extend(report.iter().map(|d| format!("  {d}")));
    Ok(Outcome::new(pass, format!("{} in-shape evaluations", grid.len())).with(lines))
}

fn corollary() -> Result<Outcome> {
    let brute = genfun::h_brute(40, 12);
    let a = compare(&brute, &genfun::h_positive(40, 12)?);
    let b = compare(&brute, &genfun::h_product(40, 12));
    let pass = a.is_equal() && b.is_equal();
    Ok(Outcome::new(pass, "at-most-twice series on q <= 40, t <= 12")
        .with(vec![format!("brute vs positive: {a}"), format!("brute vs product: {b}")]))
}

fn negative(name: &str, s: &BiSeries) -> Option<String> {
    s.first_negative().map(|(n, m, c)| format!("{name}: coefficient {c} at q^{n} t^{m}"))
}

fn positivity() -> Result<Outcome> {
    let mut bad = Vec::new();
    for v in KrVariant::ALL {
        bad.extend(negative(&format!("{v} positive"), &genfun::kr_positive(v, 30, 10)?));
        bad.extend(negative(&format!("{v} alternating"), &genfun::kr_alternating(v, 40, 12)));
    }
    bad.extend(negative("h positive", &genfun::h_positive(40, 12)?));
    let mut table = PTable::new();
    for m3 in 0..=3 {
        for m1 in 0..=6 {
            for m2 in 0..=6 {
                let (_, hi) = ppoly::support_window(m1, m2, m3);
                for s in 0..=hi + 2 {
                    table.p(m1, m2, m3, s)?;
                }
            }
        }
    }
    let mut polys = 0;
    for (k, poly) in table.entries() {
        polys += 1;
        if !poly.is_nonnegative() {
            bad.push(format!("{k} = {poly}"));
        }
    }
    let summary = format!("positive and alternating series, {polys} memoized P polynomials, {} negatives", bad.len());
    Ok(Outcome::new(bad.is_empty(), summary).with(bad))
}

type Criterion = (u8, &'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "appendix reproduction", appendix_reproduction),
        (2, "oracle calibration", oracle_calibration),
        (3, "three-form equality", three_forms),
        (4, "product identities", products),
        (5, "bijection", bijection),
        (6, "worked examples", worked_examples),
        (7, "closed forms", closed_forms),
        (8, "corollary identity", corollary),
        (9, "positivity", positivity),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let secs = start.elapsed().as_secs_f64();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id} ({name}): {} [{secs:.1}s]", outcome.summary);
        for line in &outcome.details {
            println!("    {line}");
        }
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
