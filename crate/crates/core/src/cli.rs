//! Command-line front end. `run` is the testable core: it takes the argument
//! list and returns the exit code with everything written to stdout/stderr.
//!
//! Exit codes: 0 success, 1 a verify suite found a mismatch, 2 bad input.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::appendix;
use crate::error::{Error, Result};
use crate::genfun::{self, compare, Form, GenFunSpec};
use crate::moves::{self, Decomposition, MoveEvent};
use crate::partitions::{check_kr, KrVariant, Partition};
use crate::ppoly::{self, PKey};
use crate::seedgen::{self, EvenGroup};
use crate::worked;

#[derive(Parser, Debug)]
#[command(name = "qpartition", version, about = "Exact partition generating functions and the move bijection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Appendix,
    Examples,
    Closed,
    Products,
    Forms,
    Corollary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generating function of a class (1, 2, 3) or of at-most-twice partitions (h).
    Kr {
        #[arg(long)]
        variant: String,
        #[arg(long, default_value = "positive")]
        form: String,
        #[arg(long, default_value_t = 40)]
        max_q: usize,
        #[arg(long, default_value_t = 12)]
        max_t: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: SeriesFormat,
    },
    /// P(m1, m2, m3, s; q), or one parity of it.
    Ppoly {
        #[arg(long)]
        m1: i64,
        #[arg(long)]
        m2: i64,
        #[arg(long)]
        m3: i64,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        parity: Option<u8>,
        #[arg(long, value_enum, default_value = "text")]
        format: PolyFormat,
    },
    /// Backward moves down to a base partition.
    Decompose {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        trace: bool,
    },
    /// Forward moves from a (base, mu, theta) triple.
    Compose {
        #[arg(long)]
        base: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        trace: bool,
    },
    /// Every class member sharing the seed of the given partition.
    SeedExpand {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        variant: String,
    },
    /// Recompute a suite of reference results; exit 1 on any mismatch.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_q: Option<usize>,
        #[arg(long)]
        max_t: Option<usize>,
    },
    /// Base structures with the given numbers of pairs and blocks.
    Bases {
        #[arg(long)]
        m1: usize,
        #[arg(long)]
        m2: usize,
        #[arg(long)]
        m3: usize,
        #[arg(long, default_value_t = 60)]
        max_weight: u64,
    },
}

#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn main_entry() -> i32 {
    if let Some(n) = std::env::var("QPARTITION_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialization only happens in tests; the first one wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let out = run(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stderr: text, ..Output::default() }
            } else {
                Output { code: 0, stdout: text, ..Output::default() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(Error::InvalidInput(msg)) => Output { code: 2, stderr: format!("error: {msg}\n"), ..Output::default() },
        Err(e) => Output { code: 1, stderr: format!("error: {e}\n"), ..Output::default() },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Kr { variant, form, max_q, max_t, format } => {
            let spec = GenFunSpec { family: variant.parse()?, form: form.parse()?, max_q, max_t };
            let series = spec.evaluate()?;
            let text = match format {
                SeriesFormat::Json => format!("{}\n", series.to_json()),
                SeriesFormat::Table => {
                    let mut rows: Vec<_> = series.terms().map(|(m, n, c)| (n, m, c.clone())).collect();
                    rows.sort();
                    rows.iter().fold(String::new(), |mut s, (n, m, c)| {
                        let _ = writeln!(s, "{n}\t{m}\t{c}");
                        s
                    })
                }
            };
            Ok((0, text))
        }
        Command::Ppoly { m1, m2, m3, s, parity, format } => {
            let poly = match parity {
                None => ppoly::p(m1, m2, m3, s)?,
                Some(b @ (0 | 1)) => ppoly::p_parity(PKey::new(m1, m2, m3, s, b))?,
                Some(b) => return Err(Error::InvalidInput(format!("parity must be 0 or 1, got {b}"))),
            };
            Ok((0, match format {
                PolyFormat::Text => format!("{poly}\n"),
                PolyFormat::Json => to_json(&poly.to_json_value()),
            }))
        }
        Command::Decompose { partition, trace } => {
            let lambda: Partition = partition.parse()?;
            let (d, events) = moves::decompose_traced(&lambda)?;
            Ok((0, to_json(&MoveReport::new(&lambda, &d, trace.then_some(events)))))
        }
        Command::Compose { base, mu, theta, trace } => {
            let d = Decomposition::new(&base.parse()?, &mu.parse()?, &theta.parse()?)?;
            let (lambda, events) = moves::compose_traced(&d)?;
            Ok((0, to_json(&MoveReport::new(&lambda, &d, trace.then_some(events)))))
        }
        Command::SeedExpand { partition, variant } => {
            let v: KrVariant = variant.parse()?;
            let p: Partition = partition.parse()?;
            let seed = if check_kr(&p, v)? { seedgen::to_seed(&p, v)? } else { p };
            let e = seedgen::expand_seed_detailed(&seed, v)?;
            let report = SeedReport {
                seed: e.decomposition.seed.to_plus_string(),
                base: e.decomposition.base.to_plus_string(),
                mu: e.decomposition.mu.to_plus_string(),
                groups: e.decomposition.even_groups,
                partitions: e.partitions.iter().map(Partition::to_plus_string).collect(),
            };
            Ok((0, to_json(&report)))
        }
        Command::Verify { suite, max_q, max_t } => verify(suite, max_q, max_t),
        Command::Bases { m1, m2, m3, max_weight } => {
            let rows: Vec<BaseRow> = moves::enumerate_bases(m1, m2, m3, max_weight)?
                .into_iter()
                .map(|b| BaseRow {
                    structure: b.structure.to_string(),
                    weight: b.weight,
                    largest_pair: b.largest_pair,
                    parity: b.parity,
                })
                .collect();
            Ok((0, to_json(&rows)))
        }
    }
}

#[derive(Serialize)]
struct Weights {
    partition: u64,
    base: u64,
    mu: u64,
    theta: u64,
}

#[derive(Serialize)]
struct MoveReport {
    partition: String,
    base: String,
    mu: String,
    theta: String,
    n2: usize,
    n11: usize,
    n12: usize,
    weights: Weights,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<MoveEvent>>,
}

impl MoveReport {
    fn new(lambda: &Partition, d: &Decomposition, trace: Option<Vec<MoveEvent>>) -> Self {
        MoveReport {
            partition: lambda.to_string(),
            base: d.base().to_string(),
            mu: d.mu().to_string(),
            theta: d.theta().to_string(),
            n2: d.n2(),
            n11: d.n11(),
            n12: d.n12(),
            weights: Weights {
                partition: lambda.weight(),
                base: d.base().parts().weight(),
                mu: d.mu().weight(),
                theta: d.theta().weight(),
            },
            trace,
        }
    }
}

#[derive(Serialize)]
struct SeedReport {
    seed: String,
    base: String,
    mu: String,
    groups: Vec<EvenGroup>,
    partitions: Vec<String>,
}

#[derive(Serialize)]
struct BaseRow {
    structure: String,
    weight: u64,
    largest_pair: u32,
    parity: u8,
}

/// Appends one line per check and returns whether all passed.
fn line(out: &mut String, ok: bool, what: impl std::fmt::Display) -> bool {
    let _ = writeln!(out, "{} {what}", if ok { "ok      " } else { "MISMATCH" });
    ok
}

fn verify(suite: Suite, max_q: Option<usize>, max_t: Option<usize>) -> Result<(i32, String)> {
    let mut out = String::new();
    let mut all = true;
    match suite {
        Suite::Appendix => {
            let rows = appendix::entries()?;
            let diffs = appendix::verify(&rows)?;
            for d in &diffs {
                let _ = writeln!(out, "{d}");
            }
            all &= line(&mut out, diffs.is_empty(), format!("{} table rows, {} mismatches", rows.len(), diffs.len()));
        }
        Suite::Examples => {
            for c in worked::all()? {
                all &= line(&mut out, c.ok, format!("{}: {}", c.name, c.detail));
            }
        }
        Suite::Closed => {
            let (mut checked, mut bad) = (0, 0);
            for form in ppoly::closed_form_grid(6, 3) {
                let (m1, m2, m3, s) = form.key();
                let want = ppoly::p(m1, m2, m3, s)?;
                let got = form.evaluate()?;
                checked += 1;
                if got != want {
                    bad += 1;
                    let _ = writeln!(out, "{form:?}: formula {got} / recursion {want}");
                }
            }
            all &= line(&mut out, bad == 0, format!("{checked} closed-form evaluations, {bad} mismatches"));
            let report = ppoly::printed_exponent_report(6, 3)?;
            let _ = writeln!(out, "printed block exponent disagrees with the recursion at {} parameter sets:", report.len());
            for d in report.iter().take(10) {
                let _ = writeln!(out, "  {d}");
            }
        }
        Suite::Products => {
            let q = max_q.unwrap_or(60);
            for v in KrVariant::ALL {
                let left = genfun::kr_t_marginal(v, Form::Alternating, q)?;
                let r = compare(&left, &genfun::product_side(v, q));
                all &= line(&mut out, r.is_equal(), format!("{v} t = 1 vs product: {r}"));
            }
            let left = genfun::kr_t_marginal(KrVariant::DPrime, Form::Alternating, q)?;
            let r = compare(&left, &genfun::kr2_product_folded(q));
            all &= line(&mut out, r.is_equal(), format!("KR2 t = 1 vs folded product: {r}"));
        }
        Suite::Forms => {
            let (q, t) = (max_q.unwrap_or(30), max_t.unwrap_or(10));
            for v in KrVariant::ALL {
                let brute = genfun::kr_brute(v, q, t);
                let alt = genfun::kr_alternating(v, q, t);
                let pos = genfun::kr_positive(v, q, t)?;
                let r = compare(&brute, &alt);
                all &= line(&mut out, r.is_equal(), format!("{v} brute vs alternating: {r}"));
                let r = compare(&brute, &pos);
                all &= line(&mut out, r.is_equal(), format!("{v} brute vs positive: {r}"));
            }
        }
        Suite::Corollary => {
            let (q, t) = (max_q.unwrap_or(40), max_t.unwrap_or(12));
            let brute = genfun::h_brute(q, t);
            let r = compare(&brute, &genfun::h_positive(q, t)?);
            all &= line(&mut out, r.is_equal(), format!("brute vs positive: {r}"));
            let r = compare(&brute, &genfun::h_product(q, t));
            all &= line(&mut out, r.is_equal(), format!("brute vs product: {r}"));
        }
    }
    Ok((if all { 0 } else { 1 }, out))
}
