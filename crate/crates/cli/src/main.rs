use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morsepow::io::{parse_ideal, parse_indices, IdealSpec};
use morsepow::report::{render_text, run, run_formula, Command, RunOptions, RunReport};
use morsepow::taylor::DEFAULT_CAP;
use morsepow::Error;

#[derive(Parser)]
#[command(name = "morsepow", version, about = "Minimal free resolutions of powers of projective dimension one monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Decide whether pd(I) <= 1 and print the witness order
    Check(Common),
    /// Generator order, joint function and resolution tree of I
    Order(Common),
    /// Minimal generators of I^r
    Generators(Common),
    /// Classify every Taylor face of I^r (brute force, bounded by --cap)
    Matching(Common),
    /// Critical cells and their lcm labels
    Critical(Common),
    /// Bases and differentials of the minimal resolution
    Resolution(Common),
    /// Total and multigraded Betti numbers
    Betti(Common),
    /// Projective dimension and dstab
    Pd {
        #[command(flatten)]
        common: Common,
        /// Number of generators, for the formula alone without an ideal
        #[arg(short = 'q', long)]
        q: Option<usize>,
    },
    /// Run every verification oracle
    Verify(Common),
    /// Everything above in one report
    All(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Common {
    /// Input file (.json or text); `-` reads stdin
    #[arg(short = 'i', long = "input")]
    input: Option<PathBuf>,
    /// Inline ideal, e.g. "I = (x*y, y*z, z*u); r = 2"
    #[arg(long)]
    ideal: Option<String>,
    /// Power r, overriding the input
    #[arg(short = 'r', long)]
    r: Option<u32>,
    /// Largest Taylor face count for brute-force checks
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Field characteristics for the strand check, comma separated
    #[arg(long = "char", default_value = "0,2")]
    chars: String,
    /// 1-based joint function replacing the default, e.g. 1,1,2
    #[arg(long)]
    tau_override: Option<String>,
    /// Largest number of gradient paths enumerated from one face
    #[arg(long, default_value_t = 100_000)]
    path_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-stage timings
    #[arg(long)]
    timings: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::NotSquarefree(_)
        | Error::NotMinimalGenerating { .. }
        | Error::UnitGenerator
        | Error::InvalidDeclaredOrder(_)
        | Error::InvalidTau(_)
        | Error::NotPrime(_) => 2,
        Error::NotProjectiveDimensionOne { .. } => 3,
        Error::TooLarge { .. } => 4,
        Error::VerificationFailed(_) => 5,
        _ => 1,
    }
}

fn read_spec(c: &Common) -> Result<IdealSpec, Error> {
    let text = match (&c.input, &c.ideal) {
        (Some(_), Some(_)) => return Err(Error::Parse("give either --input or --ideal".into())),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Io(e.to_string()))?;
            s
        }
        (Some(p), None) => fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Error::Parse("no ideal given; use --input or --ideal".into())),
    };
    let mut spec = parse_ideal(&text)?;
    if let Some(r) = c.r {
        spec.r = r;
    }
    Ok(spec)
}

fn options(c: &Common) -> Result<RunOptions, Error> {
    let chars = parse_indices(&c.chars).map_err(|_| Error::Parse(format!("bad --char {:?}", c.chars)))?;
    Ok(RunOptions {
        cap: c.cap,
        chars: chars.into_iter().map(|x| x as u64).collect(),
        tau_override: c.tau_override.as_deref().map(parse_indices).transpose()?,
        path_cap: c.path_cap,
        timings: c.timings,
    })
}

fn emit(report: &RunReport, c: &Common) -> Result<(), Error> {
    let body = match c.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => render_text(report),
    };
    match &c.out {
        Some(p) => fs::write(p, body).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<u8, Error> {
    let (command, common, q) = match cli.command {
        Sub::Check(c) => (Command::Check, c, None),
        Sub::Order(c) => (Command::Order, c, None),
        Sub::Generators(c) => (Command::Generators, c, None),
        Sub::Matching(c) => (Command::Matching, c, None),
        Sub::Critical(c) => (Command::Critical, c, None),
        Sub::Resolution(c) => (Command::Resolution, c, None),
        Sub::Betti(c) => (Command::Betti, c, None),
        Sub::Pd { common, q } => (Command::Pd, common, q),
        Sub::Verify(c) => (Command::Verify, c, None),
        Sub::All(c) => (Command::All, c, None),
    };
    if let Some(q) = q {
        if common.input.is_some() || common.ideal.is_some() {
            return Err(Error::Parse("-q is the formula-only mode; drop the ideal".into()));
        }
        let report = run_formula(q, common.r.unwrap_or(1));
        emit(&report, &common)?;
        return Ok(0);
    }
    let spec = read_spec(&common)?;
    let report = run(command, &spec, &options(&common)?)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    emit(&report, &common)?;
    if report.pd1.as_ref().is_some_and(|p| !p.holds) {
        return Ok(3);
    }
    let failures = report.failures();
    if !failures.is_empty() {
        eprintln!("error: {}", Error::VerificationFailed(failures.clone()));
        return Ok(5);
    }
    Ok(0)
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("MORSEPOW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
