use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tmwords::binomial::{binom_words, extended_parikh};
use tmwords::host::{HostStrategy, PrefixPolicy};
use tmwords::periodicity::{conjecture_scan, default_scan_n_max};
use tmwords::table::{complexity_profile, ComplexityTable, TableMeta};
use tmwords::tm::{abelian_closed, binomial2_closed, tm2_binomial_closed, tm_prefix, tm_source};
use tmwords::verify::{run_suite, Suite, SuiteConfig};
use tmwords::{Error, Word};

#[derive(Parser)]
#[command(name = "tmwords", version, about = "Binomial complexity of generalized Thue-Morse words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prefix of t_m.
    Generate {
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        common: Common,
    },
    /// binom(u, v), the number of occurrences of v as a subsequence of u.
    Binom {
        u: String,
        v: Option<String>,
        /// Take v to be the empty word.
        #[arg(long, conflicts_with = "v")]
        empty_v: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Extended Parikh vector Ψ_k(u).
    Psi {
        u: String,
        #[command(flatten)]
        common: Common,
    },
    /// Length-n factors of t_m.
    Factors {
        #[command(flatten)]
        common: Common,
    },
    /// Table of b_{t_m,k}(n) over a range of n.
    Complexity {
        /// Compare every row with the closed form where one applies.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Randomized instances per property (never below the suite minimum).
        #[arg(long, default_value_t = 0)]
        instances: usize,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Scan b_{t_m,k} for k >= 3 against period m^k.
    Scan {
        /// Largest n computed; defaults to 3·m^k.
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// A single n, or an inclusive range a..b.
    #[arg(long = "n", visible_alias = "n-range")]
    n: Option<NRange>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Use prefix doubling from K·n letters instead of the exact factor cover.
    #[arg(long = "prefix-K", value_name = "K")]
    prefix_k: Option<usize>,
    #[arg(long, default_value_t = PrefixPolicy::default().max_doublings)]
    max_doublings: u32,
    #[arg(long, default_value_t = tmwords::periodicity::DEFAULT_BUDGET_MB)]
    budget_mb: u64,
    /// Worker threads; all cores by default.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write output to this file (atomically) instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Clone, Debug)]
struct NRange(RangeInclusive<usize>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(NRange(lo..=hi))
    }
}

enum Failure {
    Usage(String),
    Core(Error),
    /// Report for stdout and failing records for stderr.
    Verification { report: String, failing: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification { .. } => 1,
            Failure::Usage(_) => 2,
            Failure::Core(Error::Overflow(_)) => 3,
            Failure::Core(Error::InsufficientPrefix { .. }) => 4,
            Failure::Core(Error::Budget { .. }) => 5,
            Failure::Core(_) => 2,
        }
    }
}

type Outcome = Result<String, Failure>;

impl Common {
    fn m(&self) -> Result<usize, Failure> {
        self.m.ok_or_else(|| Failure::Usage("--m is required".into()))
    }

    fn k(&self, default: usize) -> usize {
        self.k.unwrap_or(default)
    }

    fn n_range(&self) -> Result<RangeInclusive<usize>, Failure> {
        self.n
            .as_ref()
            .map(|r| r.0.clone())
            .ok_or_else(|| Failure::Usage("--n is required".into()))
    }

    fn strategy(&self) -> HostStrategy {
        match self.prefix_k {
            Some(growth) => HostStrategy::Prefix(PrefixPolicy {
                growth,
                max_doublings: self.max_doublings,
            }),
            None => HostStrategy::Cover,
        }
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn parse_word(s: &str, m: Option<usize>) -> Result<Word, Failure> {
    if s.is_empty() {
        return Err(Failure::Usage("empty word on the command line; use --empty-v".into()));
    }
    let w = Word::parse(s)?;
    if let Some(m) = m {
        w.check(m)?;
    }
    Ok(w)
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

fn generate(len: usize, common: &Common) -> Outcome {
    let m = common.m()?;
    let w = tm_prefix(m, len)?;
    Ok(match common.format(Format::Plain) {
        Format::Json => json!({ "m": m, "word": w.render(m) }).to_string() + "\n",
        _ if w.is_empty() => String::new(),
        _ => w.render(m) + "\n",
    })
}

fn binom(u: &str, v: Option<&str>, empty_v: bool, common: &Common) -> Outcome {
    let u = parse_word(u, common.m)?;
    let v = match (v, empty_v) {
        (_, true) => Word::empty(),
        (Some(v), false) => parse_word(v, common.m)?,
        (None, false) => return Err(Failure::Usage("give v, or --empty-v for the empty word".into())),
    };
    let value = binom_words(&u, &v)?;
    Ok(match common.format(Format::Plain) {
        Format::Json => json!({ "u": u.to_string(), "v": v.to_string(), "value": value.to_string() }).to_string() + "\n",
        _ => format!("{value}\n"),
    })
}

fn psi(u: &str, common: &Common) -> Outcome {
    let u = parse_word(u, common.m)?;
    let m = common.m.unwrap_or_else(|| u.min_alphabet().max(2));
    let k = common.k(2);
    let vector = extended_parikh(&u, k, m)?;
    let layout = vector.layout();
    let entries = vector
        .counts()
        .iter()
        .enumerate()
        .map(|(i, c)| (layout.word_at(i).render(m), c.to_string()));
    Ok(match common.format(Format::Plain) {
        Format::Plain => {
            vector.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ") + "\n"
        }
        Format::Csv => "v,value\n".to_string() + &lines(entries.map(|(v, c)| format!("{v},{c}"))),
        Format::Json => {
            let rows: Vec<_> = entries.map(|(v, c)| json!({ "v": v, "value": c })).collect();
            serde_json::to_string_pretty(&json!({ "u": u.render(m), "m": m, "k": k, "entries": rows })).unwrap() + "\n"
        }
    })
}

fn factors(common: &Common) -> Outcome {
    let m = common.m()?;
    let n_range = common.n_range()?;
    let source = tm_source(m)?;
    let strategy = common.strategy();
    let mut rows = Vec::new();
    for n in n_range {
        let set = source.evaluate(n, &strategy, |hosts| {
            Ok(hosts
                .iter()
                .flat_map(|h| tmwords::word::factors(h, n))
                .collect::<std::collections::BTreeSet<_>>())
        })?;
        rows.extend(set.into_iter().map(|f| (n, f.render(m))));
    }
    Ok(match common.format(Format::Plain) {
        Format::Plain => lines(rows.into_iter().map(|(_, f)| f)),
        Format::Csv => "n,factor\n".to_string() + &lines(rows.into_iter().map(|(n, f)| format!("{n},{f}"))),
        Format::Json => {
            let rows: Vec<_> = rows.into_iter().map(|(n, f)| json!({ "n": n, "factor": f })).collect();
            serde_json::to_string_pretty(&rows).unwrap() + "\n"
        }
    })
}

/// Closed form for `b_{t_m,k}(n)` where one is known.
fn closed_form(m: usize, k: usize, n: usize) -> Option<u64> {
    match (m, k) {
        (2, k) if k >= 1 && n >= 1 << k => tm2_binomial_closed(k, n).ok(),
        (m, 1) if m >= 3 => abelian_closed(m, n).ok(),
        (m, 2) if m >= 3 => binomial2_closed(m, n).ok(),
        _ => None,
    }
}

fn render_table(table: &ComplexityTable, meta: &TableMeta, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(meta) + "\n",
        Format::Plain => table.to_plain(),
    }
}

fn complexity(check: bool, common: &Common) -> Outcome {
    let m = common.m()?;
    let k = common.k(2);
    let table = complexity_profile(&tm_source(m)?, k, m, common.n_range()?, &common.strategy())?;
    if check {
        let bad: Vec<String> = table
            .rows()
            .filter_map(|r| {
                let want = closed_form(m, k, r.n)?;
                (want != r.value).then(|| format!("n = {}: oracle {}, closed form {want}", r.n, r.value))
            })
            .collect();
        if !bad.is_empty() {
            return Err(Failure::Verification {
                report: String::new(),
                failing: bad.join("\n"),
            });
        }
    }
    let meta = TableMeta {
        m,
        k,
        generator: "morphism".into(),
        oracle_checked: check,
    };
    Ok(render_table(&table, &meta, common.format(Format::Csv)))
}

fn verify(suite: &str, instances: usize, seed: u64, common: &Common) -> Outcome {
    let suite: Suite = suite.parse()?;
    let config = SuiteConfig {
        m: common.m,
        extra_n: common.n.as_ref().map(|r| r.0.clone().collect()).unwrap_or_default(),
        instances,
        seed,
        strategy: common.strategy(),
    };
    let report = run_suite(suite, &config)?;
    let text = match common.format(Format::Plain) {
        Format::Json => report.to_json() + "\n",
        _ => {
            let verdict = if report.passed { "PASS" } else { "FAIL" };
            lines(
                report
                    .records
                    .iter()
                    .map(|r| r.to_string())
                    .chain([format!("{verdict} {}", report.suite)]),
            )
        }
    };
    if report.passed {
        Ok(text)
    } else {
        let failing: Vec<String> = report.failures().map(|r| r.to_string()).collect();
        Err(Failure::Verification {
            report: text,
            failing: failing.join("\n"),
        })
    }
}

fn scan(n_max: Option<usize>, common: &Common) -> Outcome {
    let m = common.m()?;
    let k = common.k(3);
    let n_max = match n_max.or_else(|| common.n.as_ref().map(|r| *r.0.end())) {
        Some(n) => n,
        None => default_scan_n_max(m, k).ok_or_else(|| Error::Overflow(format!("3·{m}^{k}")))?,
    };
    let report = conjecture_scan(m, k, n_max, common.budget_mb)?;
    let body = json!({ "m": m, "k": k, "n_max": n_max, "report": report });
    Ok(serde_json::to_string_pretty(&body).unwrap() + "\n")
}

/// Writes `text` to `path` via a temporary file in the same directory.
fn write_atomic(path: &PathBuf, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(std::path::Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate { len, common } => generate(*len, common),
        Command::Binom { u, v, empty_v, common } => binom(u, v.as_deref(), *empty_v, common),
        Command::Psi { u, common } => psi(u, common),
        Command::Factors { common } => factors(common),
        Command::Complexity { check, common } => complexity(*check, common),
        Command::Verify {
            suite,
            instances,
            seed,
            common,
        } => verify(suite, *instances, *seed, common),
        Command::Scan { n_max, common } => scan(*n_max, common),
    }
}

fn common(cli: &Cli) -> &Common {
    match &cli.command {
        Command::Generate { common, .. }
        | Command::Binom { common, .. }
        | Command::Psi { common, .. }
        | Command::Factors { common }
        | Command::Complexity { common, .. }
        | Command::Verify { common, .. }
        | Command::Scan { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common(&cli);
    if let Some(jobs) = common.jobs {
        if jobs == 0 || rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("error: invalid --jobs {jobs}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(text) => {
            let written = match &common.output {
                Some(path) => write_atomic(path, &text),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(failure) => {
            let code = failure.exit_code();
            match failure {
                Failure::Verification { report, failing } => {
                    print!("{report}");
                    eprintln!("{failing}");
                }
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Core(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
