//! The `ratcube` command line.
//!
//! Exit codes: `0` success, `1` internal error, `2` malformed arguments,
//! `3` domain or precondition error (message on standard error).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, parse_int, parse_rat, ExactInt, ExactRat};
use crate::classify::{self, NForm, Verdict, VerdictStatus};
use crate::error::Error;
use crate::prooflab::{self, Level, SuiteResult};
use crate::search::{self, CubicHit, RatTriple, SearchOptions, SearchReport};
use crate::sylvester::{self, CubicSolution, IntTriple, SylvesterTriple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ratcube",
    version,
    about = "Non-existence certificates and exact searches for xyz = ab², x+y+z = abc"
)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Run one query per line of FILE and print one JSON object per query.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

fn int_arg(s: &str) -> Result<ExactInt, String> {
    parse_int(s).map_err(|e| e.to_string())
}

fn rat_arg(s: &str) -> Result<ExactRat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Which covered family n belongs to.
    Classify {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        n: ExactInt,
    },
    /// Evaluate the conditions for xyz = ab², x+y+z = abc.
    Theorem {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        a: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        b: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        c: ExactInt,
    },
    /// Evaluate the conditions for xyz = a, x+y+z = an.
    Corollary {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        a: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        n: ExactInt,
    },
    /// Search x³ + y³ + n²z³ = nxyz with x ≤ y ≤ B, z ≤ B.
    SearchCubic {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        n: ExactInt,
        #[arg(long)]
        bound: u64,
    },
    /// Search the rational system with one coordinate of height ≤ H.
    SearchSystem {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        a: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        b: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        c: ExactInt,
        #[arg(long)]
        height: u64,
    },
    /// Search (x+y+z)³ = n·xyz with x ≤ y ≤ z ≤ B.
    SearchGuy {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        n: ExactInt,
        #[arg(long)]
        bound: u64,
    },
    /// Sylvester transformation of Aα³ + Bβ³ + Cγ³ = Dαβγ (rationals as p/q).
    Sylvester {
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        a: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        b: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        c: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        d: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        alpha: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        beta: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        gamma: ExactRat,
    },
    /// Map a rational solution of the system to the cubic with n = a²bc³.
    ReduceSystem {
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        x: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        y: ExactRat,
        #[arg(value_parser = rat_arg, allow_hyphen_values = true)]
        z: ExactRat,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        a: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        b: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        c: ExactInt,
    },
    /// Map a solution of (x+y+z)³ = n·xyz to the cubic for the same n.
    ReduceGuy {
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        x: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        y: ExactInt,
        #[arg(value_parser = int_arg, allow_hyphen_values = true)]
        z: ExactInt,
    },
    /// Classification table for 1 ≤ n ≤ N.
    Table {
        #[arg(long = "max", value_parser = int_arg)]
        max: ExactInt,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Run the identity sweeps.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Theorem { .. } => "theorem",
            Command::Corollary { .. } => "corollary",
            Command::SearchCubic { .. } => "search-cubic",
            Command::SearchSystem { .. } => "search-system",
            Command::SearchGuy { .. } => "search-guy",
            Command::Sylvester { .. } => "sylvester",
            Command::ReduceSystem { .. } => "reduce-system",
            Command::ReduceGuy { .. } => "reduce-guy",
            Command::Table { .. } => "table",
            Command::Selftest { .. } => "selftest",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResult {
    #[serde(with = "crate::serde_exact::int")]
    pub n: ExactInt,
    pub covered: bool,
    pub form: NForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(with = "crate::serde_exact::int")]
    pub n: ExactInt,
    pub covered: bool,
    pub form: String,
    #[serde(with = "crate::serde_exact::opt_int")]
    pub k: Option<ExactInt>,
    #[serde(with = "crate::serde_exact::opt_int")]
    pub m: Option<ExactInt>,
}

impl TableRow {
    fn csv_line(&self) -> String {
        let opt = |v: &Option<ExactInt>| v.as_ref().map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.n,
            self.covered,
            self.form,
            opt(&self.k),
            opt(&self.m)
        )
    }
}

pub const TABLE_CSV_HEADER: &str = "n,covered,form,k,m";

/// Result of one subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Classify(ClassifyResult),
    Verdict(Verdict),
    CubicSearch(SearchReport<CubicHit>),
    SystemSearch(SearchReport<RatTriple>),
    GuySearch(SearchReport<IntTriple>),
    Sylvester(SylvesterTriple),
    CubicSolution(CubicSolution),
    Table(Vec<TableRow>),
    Selftest(Vec<SuiteResult>),
}

/// One query and its outcome, as written in JSON mode.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueryRecord {
    pub command: String,
    pub args: Vec<String>,
    /// The process exit code this query maps to.
    pub status: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Domain(_)
        | Error::Precondition(_)
        | Error::Degenerate(_)
        | Error::NotRepresentable(_)
        | Error::FactorizationLimit { .. } => EXIT_DOMAIN,
    }
}

fn execute(cmd: &Command, opts: SearchOptions) -> Result<Payload, Error> {
    Ok(match cmd {
        Command::Classify { n } => {
            let form = classify::classify_n(n)?;
            Payload::Classify(ClassifyResult {
                n: n.clone(),
                covered: form.is_covered(),
                form,
            })
        }
        Command::Theorem { a, b, c } => Payload::Verdict(classify::check_theorem(a, b, c)?),
        Command::Corollary { a, n } => Payload::Verdict(classify::check_corollary(a, n)?),
        Command::SearchCubic { n, bound } => {
            Payload::CubicSearch(search::search_cubic_with(n, *bound, opts)?)
        }
        Command::SearchSystem { a, b, c, height } => {
            Payload::SystemSearch(search::search_system_with(a, b, c, *height, opts)?)
        }
        Command::SearchGuy { n, bound } => {
            Payload::GuySearch(search::search_guy_with(n, *bound, opts)?)
        }
        Command::Sylvester {
            a,
            b,
            c,
            d,
            alpha,
            beta,
            gamma,
        } => Payload::Sylvester(sylvester::sylvester_transform(
            a, b, c, d, alpha, beta, gamma,
        )?),
        Command::ReduceSystem { x, y, z, a, b, c } => {
            Payload::CubicSolution(sylvester::reduce_system_to_cubic(x, y, z, a, b, c)?)
        }
        Command::ReduceGuy { x, y, z } => {
            Payload::CubicSolution(sylvester::reduce_guy_to_cubic(x, y, z)?)
        }
        Command::Table { max, .. } => Payload::Table(table_rows(max)?),
        Command::Selftest { level } => Payload::Selftest(prooflab::run_suites(match level {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        })),
    })
}

/// One row per `1 ≤ n ≤ max`.
pub fn table_rows(max: &ExactInt) -> Result<Vec<TableRow>, Error> {
    let mut rows = Vec::new();
    let mut n = ExactInt::one();
    while n <= *max {
        let form = classify::classify_n(&n)?;
        rows.push(TableRow {
            n: n.clone(),
            covered: form.is_covered(),
            form: form.label().to_string(),
            k: form.k().cloned(),
            m: form.m().cloned(),
        });
        n += 1;
    }
    Ok(rows)
}

/// CSV rendering of [`table_rows`], header included, newline-terminated.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 16 + 20);
    out.push_str(TABLE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

fn status_of(payload: &Payload) -> i32 {
    match payload {
        Payload::Selftest(results) if !results.iter().all(SuiteResult::passed) => EXIT_INTERNAL,
        _ => EXIT_OK,
    }
}

fn render_text(cmd: &Command, payload: &Payload) -> String {
    let mut s = String::new();
    match payload {
        Payload::Classify(r) => {
            let _ = writeln!(s, "n={}: {}", r.n, r.form);
        }
        Payload::Verdict(v) => {
            let _ = writeln!(s, "{}", verdict_text(v));
        }
        Payload::CubicSearch(r) => {
            header(&mut s, "x^3+y^3+n^2z^3 = nxyz", r);
            for h in &r.solutions {
                let tag = if h.primitive { " primitive" } else { "" };
                let _ = writeln!(s, "  ({}, {}, {}){tag}", h.x, h.y, h.z);
            }
        }
        Payload::SystemSearch(r) => {
            header(&mut s, "xyz = ab^2, x+y+z = abc", r);
            for t in &r.solutions {
                let _ = writeln!(
                    s,
                    "  ({}, {}, {})",
                    format_rat(&t.x),
                    format_rat(&t.y),
                    format_rat(&t.z)
                );
            }
        }
        Payload::GuySearch(r) => {
            header(&mut s, "(x+y+z)^3 = n*xyz", r);
            for t in &r.solutions {
                let _ = writeln!(s, "  ({}, {}, {})", t.x, t.y, t.z);
            }
        }
        Payload::Sylvester(t) => {
            let _ = writeln!(
                s,
                "f={} g={} h={}",
                format_rat(&t.f),
                format_rat(&t.g),
                format_rat(&t.h)
            );
        }
        Payload::CubicSolution(c) => {
            let _ = writeln!(
                s,
                "X={} Y={} Z={} n={} (raw {} {} {})",
                c.x, c.y, c.z, c.n, c.raw.x, c.raw.y, c.raw.z
            );
        }
        Payload::Table(rows) => {
            // Text and CSV coincide for the table.
            let _ = cmd;
            s.push_str(&table_csv(rows));
        }
        Payload::Selftest(results) => {
            for r in results {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = write!(s, "{verdict} {} ({} cases", r.name, r.cases);
                if let Some(f) = &r.first_failure {
                    let _ = write!(s, ", {} failures, first {f}", r.failures);
                }
                let _ = writeln!(s, ")");
            }
        }
    }
    s
}

fn header<S>(s: &mut String, eq: &str, r: &SearchReport<S>) {
    let p = &r.params;
    let params = match (&p.n, &p.a, &p.b, &p.c) {
        (Some(n), ..) => format!("n={n}"),
        (None, Some(a), Some(b), Some(c)) => format!("a={a} b={b} c={c}"),
        _ => String::new(),
    };
    let _ = writeln!(
        s,
        "{eq} {params} bound={}: {} solution(s), {} examined{}, {:.3}s",
        r.bound,
        r.solutions.len(),
        r.triples_examined,
        if r.fast_path { " (AM-GM bound)" } else { "" },
        r.elapsed.as_secs_f64()
    );
}

fn verdict_text(v: &Verdict) -> String {
    let query = match &v.query {
        classify::Query::Theorem { a, b, c } => format!("a={a} b={b} c={c}"),
        classify::Query::Corollary { a, n } => format!("a={a} n={n}"),
    };
    let matched = if v.matched.is_empty() {
        "none".to_string()
    } else {
        v.matched
            .iter()
            .map(|c| c.label())
            .collect::<Vec<_>>()
            .join(",")
    };
    let status = match v.status {
        VerdictStatus::ProvedNoSolutions => "no positive rational solutions",
        VerdictStatus::Unknown => "unknown (no condition applies)",
    };
    format!(
        "{query}: n={} {}; matched {matched}; {status}",
        v.n, v.n_form
    )
}

fn record(cmd: &Command, args: Vec<String>, outcome: Result<Payload, Error>) -> QueryRecord {
    match outcome {
        Ok(payload) => QueryRecord {
            command: cmd.name().to_string(),
            args,
            status: status_of(&payload),
            result: Some(payload),
            error: None,
        },
        Err(e) => QueryRecord {
            command: cmd.name().to_string(),
            args,
            status: exit_code_for(&e),
            result: None,
            error: Some(e.to_string()),
        },
    }
}

fn run_batch(
    path: &PathBuf,
    opts: SearchOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "cannot read {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    };
    let mut worst = EXIT_OK;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let args: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        let argv = std::iter::once("ratcube".to_string()).chain(args.iter().cloned());
        let rec = match Cli::try_parse_from(argv) {
            Ok(Cli {
                command: Some(cmd), ..
            }) => {
                let outcome = execute(&cmd, opts);
                record(&cmd, args, outcome)
            }
            Ok(_) => QueryRecord {
                command: String::new(),
                args,
                status: EXIT_USAGE,
                result: None,
                error: Some("missing subcommand".into()),
            },
            Err(e) => QueryRecord {
                command: args.first().cloned().unwrap_or_default(),
                args,
                status: EXIT_USAGE,
                result: None,
                error: Some(e.to_string().lines().next().unwrap_or("").to_string()),
            },
        };
        worst = worst.max(rec.status);
        let line = serde_json::to_string(&rec).expect("record serializes");
        if writeln!(out, "{line}").is_err() {
            return EXIT_INTERNAL;
        }
    }
    worst
}

/// Parses `argv` (program name first), runs it, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let opts = SearchOptions::threads(cli.threads);

    if let Some(path) = &cli.batch {
        if cli.command.is_some() {
            let _ = writeln!(err, "--batch cannot be combined with a subcommand");
            return EXIT_USAGE;
        }
        return run_batch(path, opts, out, err);
    }
    let Some(cmd) = cli.command else {
        let _ = writeln!(err, "no subcommand given; try --help");
        return EXIT_USAGE;
    };

    let outcome = execute(&cmd, opts);
    if cli.json {
        let rec = record(&cmd, argv.iter().skip(1).cloned().collect(), outcome);
        if let Some(msg) = &rec.error {
            let _ = writeln!(err, "{msg}");
        }
        let code = rec.status;
        let line = serde_json::to_string(&rec).expect("record serializes");
        return match writeln!(out, "{line}") {
            Ok(()) => code,
            Err(_) => EXIT_INTERNAL,
        };
    }
    match outcome {
        Ok(payload) => {
            let text = render_text(&cmd, &payload);
            match out.write_all(text.as_bytes()) {
                Ok(()) => status_of(&payload),
                Err(_) => EXIT_INTERNAL,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code_for(&e)
        }
    }
}
