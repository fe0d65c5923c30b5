//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 I/O or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::assign::score;
use crate::exact::{parse_rational, Rational};
use crate::hypergraph::{gen_complete, gen_pair_core, gen_random, parse_hypergraph, Hypergraph};
use crate::pipeline::{partition, PartitionConfig, PartitionOutcome, PipelineError, DEFAULT_ALPHA, DEFAULT_TRIALS};
use crate::verify::analytic::spot_check_all;
use crate::verify::report::{decimal, full_report, ReportOptions};
use crate::verify::{Elimination, SystemId};
use crate::RNG_NAME;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "judicious", version, about = "Judicious 3-partitions of 3-uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-certify every tabulated inequality case.
    VerifyLemma(VerifyArgs),
    /// Partition a hypergraph file into three parts.
    Partition(PartitionArgs),
    /// Generate a hypergraph.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Box side used for every case instead of the tabulated one.
    #[arg(long, value_parser = parse_epsilon)]
    pub epsilon: Option<Rational>,
    /// Comma-separated systems, e.g. `1a,1e`.
    #[arg(long, value_delimiter = ',', value_parser = parse_system)]
    pub systems: Vec<SystemId>,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Directory for `report.csv` and `report.txt`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Skip the literal readings of 1b, 1c and 1d.
    #[arg(long)]
    pub no_literal: bool,
    /// Variable elimination rule for the slice.
    #[arg(long, default_value = "largest", value_parser = parse_elimination)]
    pub elimination: Elimination,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ALPHA, value_parser = parse_alpha)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Directory for `partition.txt` and `summary.txt`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write `summary.json`.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// All triples on `n` vertices.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// `k` edges sharing the pair {0, 1}.
    Paircore {
        #[arg(long)]
        k: usize,
    },
    /// `m` distinct uniform triples on `n` vertices.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_epsilon(s: &str) -> Result<Rational, String> {
    let e = parse_rational(s).ok_or_else(|| format!("not a number: {s:?}"))?;
    if e <= Rational::from_integer(0) {
        return Err(format!("epsilon must be positive, got {s}"));
    }
    Ok(e)
}

fn parse_system(s: &str) -> Result<SystemId, String> {
    let id: SystemId = s.parse().map_err(|_| format!("unknown system {s:?}"))?;
    if !SystemId::TABULATED.contains(&id) {
        return Err(format!("system {id} has no table"));
    }
    Ok(id)
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if a > 0.0 && a < 1.0 / 3.0 {
        Ok(a)
    } else {
        Err(format!("alpha must lie in (0, 1/3), got {s}"))
    }
}

fn parse_elimination(s: &str) -> Result<Elimination, String> {
    match s {
        "largest" => Ok(Elimination::LargestCoefficient),
        "unit" => Ok(Elimination::UnitCoefficient),
        _ => Err(format!("expected `largest` or `unit`, got {s:?}")),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let jobs = match &cli.command {
        Command::VerifyLemma(a) => a.jobs,
        Command::Partition(a) => a.jobs,
        Command::Gen(_) => None,
    };
    let mut buffer = Vec::new();
    let result = with_jobs(jobs, || match &cli.command {
        Command::VerifyLemma(a) => cmd_verify_lemma(a, &mut buffer),
        Command::Partition(a) => cmd_partition(a, &mut buffer),
        Command::Gen(a) => cmd_gen(a, &mut buffer),
    });
    let _ = stdout.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn cmd_verify_lemma(args: &VerifyArgs, stdout: &mut Vec<u8>) -> Result<i32, CliError> {
    let options = ReportOptions {
        epsilon: args.epsilon,
        systems: args.systems.clone(),
        displayed: !args.no_literal,
        elimination: args.elimination,
    };
    let report = full_report(&options).map_err(|e| CliError {
        code: EXIT_VERIFY,
        message: e.to_string(),
    })?;
    let spot = if args.systems.is_empty() { spot_check_all() } else { Vec::new() };

    let mut text = report.to_text();
    if !spot.is_empty() {
        text.push_str("\nAnalytic spot checks\n");
        for r in &spot {
            let _ = writeln!(
                text,
                "{:<28} {:<12} worst margin {:+.3e} over {} points: {}",
                r.name,
                r.quantity.describe(),
                r.worst_margin,
                r.grid_points,
                if r.passes() { "ok" } else { "FAILED" },
            );
        }
    }
    ensure_dir(&args.out)?;
    write_file(&args.out.join("report.csv"), &report.to_csv())?;
    write_file(&args.out.join("report.txt"), &text)?;
    let _ = stdout.write_all(text.as_bytes());

    let failed_spot: Vec<&str> = spot.iter().filter(|r| !r.passes()).map(|r| r.name.as_str()).collect();
    if report.all_certified() && failed_spot.is_empty() {
        Ok(EXIT_OK)
    } else {
        let mut names: Vec<String> = report
            .failures()
            .iter()
            .map(|r| format!("{} [{}]", r.system, r.conditions))
            .collect();
        names.extend(failed_spot.iter().map(|s| s.to_string()));
        Err(CliError {
            code: EXIT_VERIFY,
            message: format!("not certified: {}", names.join(", ")),
        })
    }
}

/// Machine-readable partition summary.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub n: usize,
    pub m: u64,
    pub alpha: f64,
    pub trials: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub t: usize,
    pub e3: u64,
    pub x: [u64; 3],
    pub b: [u64; 3],
    pub a: [u64; 3],
    pub c: u64,
    pub q: [f64; 3],
    pub qtilde: [f64; 3],
    pub p: [f64; 3],
    pub expected: Option<[f64; 3]>,
    pub best_trial: u64,
    pub coverage: [u64; 3],
    pub min_coverage: u64,
    pub reference: f64,
    pub concentration_z: f64,
    pub concentration_target: f64,
    pub concentration_vacuous: bool,
}

impl Summary {
    pub fn new(h: &Hypergraph, out: &PartitionOutcome) -> Self {
        let m = h.m() as u64;
        Self {
            n: h.n(),
            m,
            alpha: out.config.alpha,
            trials: out.config.trials,
            seed: out.config.seed,
            rng: RNG_NAME,
            t: out.split.t,
            e3: out.profile.e3,
            x: out.profile.x,
            b: out.profile.b,
            a: out.profile.a,
            c: out.profile.c,
            q: out.q.q,
            qtilde: out.q.qtilde,
            p: out.q.p(),
            expected: out.expected,
            best_trial: out.trials.trial,
            coverage: out.coverage(),
            min_coverage: out.min_coverage(),
            reference: 19.0 / 27.0 * m as f64,
            concentration_z: out.concentration.z,
            concentration_target: out.concentration.target,
            concentration_vacuous: out.concentration.vacuous(),
        }
    }

    /// Line-oriented `key=value` rendering.
    pub fn to_text(&self) -> String {
        fn join<T: std::fmt::Display>(v: &[T]) -> String {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
        let mut s = String::new();
        let _ = writeln!(s, "n={}", self.n);
        let _ = writeln!(s, "m={}", self.m);
        let _ = writeln!(s, "alpha={}", self.alpha);
        let _ = writeln!(s, "trials={}", self.trials);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "rng={}", self.rng);
        let _ = writeln!(s, "t={}", self.t);
        let _ = writeln!(s, "e3={}", self.e3);
        let _ = writeln!(s, "x={}", join(&self.x));
        let _ = writeln!(s, "b={}", join(&self.b));
        let _ = writeln!(s, "a={}", join(&self.a));
        let _ = writeln!(s, "c={}", self.c);
        let _ = writeln!(s, "q={}", join(&self.q));
        let _ = writeln!(s, "qtilde={}", join(&self.qtilde));
        let _ = writeln!(s, "p={}", join(&self.p));
        if let Some(e) = self.expected {
            let _ = writeln!(s, "expected={}", join(&e));
        }
        let _ = writeln!(s, "best_trial={}", self.best_trial);
        let _ = writeln!(s, "coverage={}", join(&self.coverage));
        let _ = writeln!(s, "min_coverage={}", self.min_coverage);
        let _ = writeln!(s, "reference_19_27_m={}", self.reference);
        let _ = writeln!(s, "concentration_z={}", self.concentration_z);
        let _ = writeln!(s, "concentration_target={}", self.concentration_target);
        let _ = writeln!(s, "concentration_vacuous={}", self.concentration_vacuous);
        s
    }
}

/// `v part` lines with parts numbered 1..3.
pub fn format_partition(assignment: &[usize]) -> String {
    let mut s = String::new();
    for (v, p) in assignment.iter().enumerate() {
        let _ = writeln!(s, "{v} {}", p + 1);
    }
    s
}

/// Inverse of [`format_partition`]; returns 0-based parts.
pub fn parse_partition(text: &str, n: usize) -> Result<Vec<usize>, String> {
    let mut parts = vec![None; n];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(v), Some(p), None) = (it.next(), it.next(), it.next()) else {
            return Err(format!("line {}: expected `vertex part`", i + 1));
        };
        let v: usize = v.parse().map_err(|_| format!("line {}: bad vertex", i + 1))?;
        let p: usize = p.parse().map_err(|_| format!("line {}: bad part", i + 1))?;
        if v >= n || !(1..=3).contains(&p) {
            return Err(format!("line {}: out of range", i + 1));
        }
        parts[v] = Some(p - 1);
    }
    parts
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| format!("vertex {v} unassigned")))
        .collect()
}

fn cmd_partition(args: &PartitionArgs, stdout: &mut Vec<u8>) -> Result<i32, CliError> {
    let text = fs::read_to_string(&args.file).map_err(|e| CliError::io(&args.file, e))?;
    let h = parse_hypergraph(&text).map_err(|e| CliError::io(&args.file, e))?;
    let config = PartitionConfig {
        alpha: args.alpha,
        trials: args.trials,
        seed: args.seed,
    };
    let outcome = partition(&h, &config).map_err(|e| CliError {
        code: match e {
            PipelineError::Split(_) => EXIT_IO,
            _ => EXIT_VERIFY,
        },
        message: e.to_string(),
    })?;
    let summary = Summary::new(&h, &outcome);
    ensure_dir(&args.out)?;
    write_file(&args.out.join("partition.txt"), &format_partition(outcome.assignment()))?;
    let rendered = summary.to_text();
    write_file(&args.out.join("summary.txt"), &rendered)?;
    if args.json {
        let json = serde_json::to_string_pretty(&summary).map_err(|e| CliError {
            code: EXIT_IO,
            message: e.to_string(),
        })?;
        write_file(&args.out.join("summary.json"), &(json + "\n"))?;
    }
    let _ = stdout.write_all(rendered.as_bytes());
    // The emitted file must rescore to the reported coverage.
    let parts: Vec<Option<usize>> = outcome.assignment().iter().map(|&p| Some(p)).collect();
    debug_assert_eq!(score(&h, &parts).ok(), Some(summary.coverage));
    Ok(EXIT_OK)
}

fn cmd_gen(args: &GenArgs, stdout: &mut Vec<u8>) -> Result<i32, CliError> {
    let h = match args.kind {
        GenKind::Complete { n } => gen_complete(n),
        GenKind::Paircore { k } => gen_pair_core(k),
        GenKind::Random { n, m, seed } => gen_random(n, m, seed),
    }
    .map_err(|e| CliError {
        code: EXIT_USAGE,
        message: e.to_string(),
    })?;
    let text = h.to_text();
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

/// Decimal rendering used for epsilon values in reports.
pub fn format_epsilon(e: &Rational) -> String {
    decimal(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("judicious").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_complete_header() {
        let (code, out, _) = run_args(&["gen", "complete", "--n", "6"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("6 20"));
    }

    #[test]
    fn gen_paircore_edges_share_pair() {
        let (code, out, _) = run_args(&["gen", "paircore", "--k", "3"]);
        assert_eq!(code, 0);
        let h = parse_hypergraph(&out).unwrap();
        assert_eq!(h.m(), 3);
        assert!(h.edges().iter().all(|e| e.contains(&0) && e.contains(&1)));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["partition"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["partition", "x", "--alpha", "0.5"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["partition", "x", "--trials", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify-lemma", "--epsilon", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify-lemma", "--systems", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn missing_file_is_io_error() {
        let (code, _, err) = run_args(&["partition", "/nonexistent/graph.txt"]);
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("nonexistent"));
    }

    #[test]
    fn partition_round_trip() {
        let a = vec![0, 2, 1, 1];
        assert_eq!(parse_partition(&format_partition(&a), 4).unwrap(), a);
        assert!(parse_partition("0 1\n", 2).is_err());
        assert!(parse_partition("0 4\n1 1\n", 2).is_err());
    }
}
