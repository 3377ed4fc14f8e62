//! The `malcev-forge` command line.
//!
//! ```text
//! malcev-forge verify     --c 3 --n 3 --e 1,2 --trials 1000 --seed 42 --out cert.json
//! malcev-forge witness    --c 3 --n 4 --e 2
//! malcev-forge identities --c-max 6
//! malcev-forge report     --c 3 --n 3 --n-max 5 --out summary.json
//! ```
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 for
//! invalid parameters.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::grouplaw::join_ints;
use crate::ideal::{generators_a, generators_b, MIN_DEGREE};
use crate::matrix::MatrixHeader;
use crate::poly::verify_f_factorizations;
use crate::verify::{build_gn, find_mn_failure_witness, GnCertificate, GnGroup, GnParams, DEFAULT_BOUND};

/// Caps the number of worker threads used by `report`.
pub const THREADS_ENV: &str = "MALCEV_FORGE_THREADS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "malcev-forge", version)]
#[command(about = "Build the groups G_n and certify which Malcev laws they satisfy", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check for one (c, n) and write the certificate JSON.
    Verify(GroupArgs),
    /// Write the transcript of the M_n failures on (t_1...t_n)^e A_n.
    Witness(GroupArgs),
    /// Expand the f_c factorisations and the shift isomorphism.
    Identities(IdentityArgs),
    /// Summarise certificates for a range of n.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    c: u32,
    #[arg(long)]
    n: u32,
    /// Exponents e, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    e: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random vector entries are drawn from [-bound, bound].
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: u32,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long = "c-max", default_value_t = 6)]
    c_max: u32,
    /// Number of variables for the shift check.
    #[arg(long, default_value_t = 3)]
    n: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    c: u32,
    /// First n of the range; defaults to c.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    e: Vec<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Witness,
    Identities,
    Report,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub c: u32,
    /// For `report`, the first `n` of the range.
    pub n: u32,
    pub e: Vec<u32>,
    pub trials: u32,
    pub seed: u64,
    pub bound: u32,
    pub out: Option<PathBuf>,
    /// Last `c` for `identities`.
    pub c_max: u32,
    /// Last `n` for `report`.
    pub n_max: u32,
}

impl RunConfig {
    pub fn new(command: CommandKind, c: u32, n: u32) -> Self {
        RunConfig {
            command,
            c,
            n,
            e: vec![1],
            trials: 100,
            seed: 0,
            bound: DEFAULT_BOUND,
            out: None,
            c_max: c,
            n_max: n,
        }
    }

    fn params(&self, n: u32) -> GnParams {
        GnParams {
            trials: self.trials,
            seed: self.seed,
            bound: self.bound,
            ..GnParams::new(self.c, n, self.e.clone())
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.command {
            CommandKind::Identities => {
                if self.c_max < 2 {
                    return Err(Error::Domain(format!("--c-max must be at least 2, got {}", self.c_max)));
                }
                if self.n == 0 {
                    return Err(Error::Domain("--n must be positive".into()));
                }
                Ok(())
            }
            _ => {
                if self.c < MIN_DEGREE {
                    return Err(Error::Domain(format!("--c must be at least {MIN_DEGREE}, got {}", self.c)));
                }
                if self.n_max < self.n {
                    return Err(Error::Domain(format!("--n-max {} is below --n {}", self.n_max, self.n)));
                }
                if self.e.is_empty() {
                    return Err(Error::Domain("--e needs at least one exponent".into()));
                }
                self.params(self.n).validate()
            }
        }
    }
}

fn group_config(kind: CommandKind, a: GroupArgs) -> RunConfig {
    RunConfig {
        e: a.e,
        trials: a.trials,
        seed: a.seed,
        bound: a.bound,
        out: a.out,
        ..RunConfig::new(kind, a.c, a.n)
    }
}

fn config_from_cli(cli: Cli) -> RunConfig {
    match cli.command {
        Command::Verify(a) => group_config(CommandKind::Verify, a),
        Command::Witness(a) => group_config(CommandKind::Witness, a),
        Command::Identities(a) => RunConfig {
            c_max: a.c_max,
            out: a.out,
            ..RunConfig::new(CommandKind::Identities, MIN_DEGREE, a.n)
        },
        Command::Report(a) => {
            let n = a.n.unwrap_or(a.c);
            RunConfig {
                e: a.e,
                trials: a.trials,
                seed: a.seed,
                bound: a.bound,
                out: a.out,
                n_max: a.n_max.unwrap_or(n),
                ..RunConfig::new(CommandKind::Report, a.c, n)
            }
        }
    }
}

/// Parses command-line arguments (including the program name).
pub fn parse_args<I, T>(args: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args).map(config_from_cli)
}

/// What a run produced: the file contents and whether every check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub output: String,
    pub all_pass: bool,
    /// One `PASS`/`FAIL` line per check, for the terminal.
    pub summary: Vec<String>,
}

/// Runs the command without touching the filesystem.
pub fn execute(config: &RunConfig) -> Result<Execution> {
    config.validate()?;
    match config.command {
        CommandKind::Verify => run_verify(config),
        CommandKind::Witness => run_witness(config),
        CommandKind::Identities => run_identities(config),
        CommandKind::Report => run_report(config),
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check_lines(cert: &GnCertificate) -> Vec<String> {
    cert.checks
        .iter()
        .map(|c| format!("{} {}: {}", status(c.pass), c.name, c.detail))
        .collect()
}

fn run_verify(config: &RunConfig) -> Result<Execution> {
    let cert = build_gn(&config.params(config.n))?;
    Ok(Execution {
        output: cert.to_json_string(),
        all_pass: cert.valid(),
        summary: check_lines(&cert),
    })
}

fn run_witness(config: &RunConfig) -> Result<Execution> {
    let (c, n) = (config.c, config.n);
    let group = GnGroup::new(n, c)?;
    let header = MatrixHeader { n, c, index: 0 };
    let mut out = String::new();
    let mut summary = Vec::new();
    let mut all_pass = true;
    writeln!(out, "M_{n} failure transcript for c={c}, n={n}, d={}", group.dim()).unwrap();
    for &e in &config.e {
        writeln!(out, "\n[e={e}]").unwrap();
        match find_mn_failure_witness(&group, e) {
            Ok(w) => {
                for line in &w.transcript {
                    writeln!(out, "{line}").unwrap();
                }
                writeln!(out, "a = {}", join_ints(&w.a)).unwrap();
                writeln!(out, "b = {}", join_ints(&w.b)).unwrap();
                writeln!(out, "alpha_val:\n{}", w.alpha_val.to_text(header).trim_end()).unwrap();
                writeln!(out, "beta_val:\n{}", w.beta_val.to_text(header).trim_end()).unwrap();
                summary.push(format!("PASS witness[e={e}]: a = basis vector {}", w.row));
            }
            Err(err) => {
                all_pass = false;
                writeln!(out, "no witness: {err}").unwrap();
                summary.push(format!("FAIL witness[e={e}]: {err}"));
            }
        }
    }
    Ok(Execution {
        output: out,
        all_pass,
        summary,
    })
}

fn run_identities(config: &RunConfig) -> Result<Execution> {
    let mut out = String::new();
    let mut summary = Vec::new();
    let mut all_pass = true;
    for c in 2..=config.c_max {
        let r = verify_f_factorizations(c)?;
        let ok = r.all_hold();
        all_pass &= ok;
        let line = format!(
            "{} f_{c}: (1) {} (1bis) {} (2) {} diagonal {} g_{c}(1) = {} h_{c}(1) = {}",
            status(ok),
            r.identity_1,
            r.identity_1bis,
            r.identity_2,
            r.diagonal_factor,
            r.g_at_1,
            r.h_at_1
        );
        writeln!(out, "{line}").unwrap();
        summary.push(line);
    }
    let n = config.n;
    for c in MIN_DEGREE..=config.c_max {
        let a = generators_a(n, c);
        let b = generators_b(n, c);
        let ok = a.len() == b.len() && a.iter().zip(&b).all(|(p, q)| &p.shift_substitute() == q);
        all_pass &= ok;
        let line = format!(
            "{} shift n={n} c={c}: X_i -> X_i + 1 maps all {} generators of a onto b",
            status(ok),
            a.len()
        );
        writeln!(out, "{line}").unwrap();
        summary.push(line);
    }
    Ok(Execution {
        output: out,
        all_pass,
        summary,
    })
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(Error::Domain(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

fn run_report(config: &RunConfig) -> Result<Execution> {
    let ns: Vec<u32> = (config.n..=config.n_max).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_count()? {
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    // collect() keeps the order of `ns`, so the output does not depend on scheduling
    let certs: Vec<GnCertificate> = pool.install(|| {
        ns.par_iter()
            .map(|&n| build_gn(&config.params(n)))
            .collect::<Result<Vec<_>>>()
    })?;

    let entries: Vec<_> = certs
        .iter()
        .map(|cert| {
            json!({
                "n": cert.n(),
                "d": cert.d(),
                "valid": cert.valid(),
                "failing_stage": cert.failing_stage(),
                "nilpotency_class": cert.nilpotency_class,
                "witness_e": cert.witnesses.iter().map(|w| w.e).collect::<Vec<_>>(),
            })
        })
        .collect();
    let report = json!({
        "c": config.c,
        "n_min": config.n,
        "n_max": config.n_max,
        "e": config.e,
        "trials": config.trials,
        "seed": config.seed,
        "entries": entries,
    });
    let mut output = serde_json::to_string_pretty(&report).expect("valid JSON value");
    output.push('\n');
    let summary = certs
        .iter()
        .map(|cert| {
            format!(
                "{} n={}: d={} class={}{}",
                status(cert.valid()),
                cert.n(),
                cert.d(),
                cert.nilpotency_class,
                cert.failing_stage().map(|s| format!(" first failure {s}")).unwrap_or_default()
            )
        })
        .collect();
    Ok(Execution {
        output,
        all_pass: certs.iter().all(GnCertificate::valid),
        summary,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Executes `config`, writes its output and returns the exit status.
pub fn run(config: &RunConfig) -> u8 {
    let exec = match execute(config) {
        Ok(exec) => exec,
        Err(err @ (Error::Domain(_) | Error::Parse(_))) => {
            eprintln!("error: {err}");
            return EXIT_INVALID;
        }
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_CHECK_FAILED;
        }
    };
    if let Err(err) = write_output(config.out.as_deref(), &exec.output) {
        eprintln!("error: cannot write output: {err}");
        return EXIT_CHECK_FAILED;
    }
    for line in &exec.summary {
        eprintln!("{line}");
    }
    if exec.all_pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Entry point used by the binary.
pub fn main_from_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(config) => run(&config),
        Err(err) => {
            let _ = err.print();
            if err.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            }
        }
    }
}
