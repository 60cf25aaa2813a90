//! The `ramify` command line: argument handling, polynomial parsing, batch
//! processing and report rendering on top of `ramify-core`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 violated precondition
//! (non-monic input, composite prime, reducible polynomial, ...), 3 internal
//! invariant failure.

use std::io::Read;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use ramify_core::{
    analyze, analyze_factor_with_lift, canonical_lift, check_l_property, dedekind_divides_index,
    fp_factor, newton_data, phi_expand, BigIntPoly, Prime,
};
use serde_json::{json, Value};
use thiserror::Error;

mod parse;
pub mod render;

pub use parse::{parse_poly, ParseError, MAX_EXPONENT};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] ramify_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Core(e) if e.is_internal() => 3,
            CliError::Core(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ramify",
    version,
    about = "Count the valuations of Q[x]/(F) above a prime p"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: per-factor slope data, residual polynomials and the verdict.
    Analyze(Target),
    /// Whether p divides the index of Z[alpha] in the ring of integers.
    Dedekind(Target),
    /// Print the phi-adic expansion of a polynomial.
    Expand(ExpandArgs),
    /// Print the Newton slope data for phi, or for every factor of F mod p.
    Newton(NewtonArgs),
}

#[derive(Args, Debug)]
struct Target {
    /// Polynomial in x; `-` reads it from stdin.
    #[arg(
        long,
        required_unless_present = "input",
        conflicts_with = "input",
        requires = "prime"
    )]
    poly: Option<String>,
    #[arg(long)]
    prime: Option<String>,
    /// Batch file of `p ; polynomial` lines; blank lines and `#` comments are skipped.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Seed for the randomized factorization mod p; reports do not depend on it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long)]
    poly: String,
    #[arg(long)]
    phi: String,
    /// Also print the p-adic valuation of every digit.
    #[arg(long)]
    prime: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct NewtonArgs {
    #[command(flatten)]
    target: Target,
    /// Monic polynomial to expand against; defaults to the lifted factors of F mod p.
    #[arg(long)]
    phi: Option<String>,
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of one request: a text rendering and a JSON rendering.
struct Rendered {
    text: String,
    json: Value,
}

fn parse_prime(text: &str) -> Result<Prime, CliError> {
    let value: BigUint = text
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid prime '{}'", text.trim())))?;
    Ok(Prime::new(value)?)
}

fn monic(f: &BigIntPoly) -> Result<(), CliError> {
    if f.is_monic() {
        Ok(())
    } else {
        Err(ramify_core::Error::NotMonic(f.to_string()).into())
    }
}

#[derive(Clone, Copy)]
enum Job<'a> {
    Analyze,
    Dedekind,
    Newton(Option<&'a str>),
}

fn run_job(job: Job, prime: &str, poly: &str, seed: u64) -> Result<Rendered, CliError> {
    let p = parse_prime(prime)?;
    let f = parse_poly(poly)?;
    match job {
        Job::Analyze => {
            let report = analyze(&f, &p, seed)?;
            Ok(Rendered {
                text: render::report_text(&report),
                json: render::report_json(&report),
            })
        }
        Job::Dedekind => {
            let divides = dedekind_divides_index(&f, &p, seed)?;
            Ok(Rendered {
                text: render::dedekind_line(divides).to_string(),
                json: json!({
                    "poly": f.to_string(),
                    "prime": p.to_string(),
                    "dedekind_divides_index": divides,
                }),
            })
        }
        Job::Newton(phi) => {
            monic(&f)?;
            let rows = match phi {
                Some(phi) => {
                    let phi = parse_poly(phi)?;
                    let exp = phi_expand(&f, &phi)?;
                    let nd = newton_data(&exp, &p)?;
                    let lv = check_l_property(&exp, &nd);
                    vec![(phi.to_string(), nd, lv)]
                }
                None => fp_factor(&f.reduce_mod_p(&p), seed)?
                    .iter()
                    .map(|(phi_bar, l)| {
                        let fa = analyze_factor_with_lift(&f, &p, &canonical_lift(phi_bar), *l)?;
                        Ok((fa.phi_lift.to_string(), fa.newton, fa.l_verdict))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?,
            };
            Ok(Rendered {
                text: rows
                    .iter()
                    .map(|(phi, nd, lv)| render::newton_text(phi, nd, lv))
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: Value::Array(
                    rows.iter()
                        .map(|(phi, nd, lv)| render::newton_json(phi, nd, lv))
                        .collect(),
                ),
            })
        }
    }
}

fn expand(args: &ExpandArgs, stdin: &mut dyn Read) -> Result<Rendered, CliError> {
    let poly = read_poly_arg(&args.poly, stdin)?;
    let f = parse_poly(&poly)?;
    let phi = parse_poly(&args.phi)?;
    let p = args.prime.as_deref().map(parse_prime).transpose()?;
    let exp = phi_expand(&f, &phi)?;
    Ok(Rendered {
        text: render::expansion_text(&exp, p.as_ref()),
        json: render::expansion_json(&f.to_string(), &exp, p.as_ref()),
    })
}

fn read_poly_arg(arg: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    stdin
        .read_to_string(&mut buf)
        .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
    Ok(buf)
}

/// A batch line: `(line number, prime text, polynomial text)`.
type BatchLine = (usize, String, String);

fn batch_lines(text: &str) -> Vec<Result<BatchLine, (usize, CliError)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| match l.split_once(';') {
            Some((p, f)) => Ok((i + 1, p.trim().to_string(), f.trim().to_string())),
            None => Err((
                i + 1,
                CliError::Usage("expected a line of the form `p ; polynomial`".into()),
            )),
        })
        .collect()
}

/// Runs the well-formed lines on a small thread pool; results keep input order.
fn run_batch(job: Job, lines: &[BatchLine], seed: u64) -> Vec<Result<Rendered, CliError>> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(lines.len())
        .max(1);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<Rendered, CliError>>>> =
        Mutex::new((0..lines.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((_, p, f)) = lines.get(i) else {
                    break;
                };
                let r = run_job(job, p, f, seed);
                slots.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every line was processed"))
        .collect()
}

fn batch(job: Job, path: &PathBuf, json: bool, seed: u64) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: cannot read {}: {e}\n", path.display()),
            }
        }
    };
    let parsed = batch_lines(&text);
    let good: Vec<BatchLine> = parsed
        .iter()
        .filter_map(|r| r.as_ref().ok().cloned())
        .collect();
    let mut results = run_batch(job, &good, seed).into_iter();

    let mut out = Outcome::default();
    let mut blocks = Vec::new();
    for entry in parsed {
        let (line, result) = match entry {
            Ok((line, _, _)) => (line, results.next().expect("one result per good line")),
            Err((line, e)) => (line, Err(e)),
        };
        if let Err(e) = &result {
            out.code = out.code.max(e.exit_code());
        }
        blocks.push(match (json, result) {
            (true, Ok(r)) => json!({ "line": line, "report": r.json }).to_string(),
            (true, Err(e)) => {
                json!({ "line": line, "error": e.to_string(), "exit_code": e.exit_code() })
                    .to_string()
            }
            (false, Ok(r)) => format!("== line {line} ==\n{}", r.text),
            (false, Err(e)) => format!("== line {line} ==\nerror: {e}"),
        });
    }
    out.stdout = blocks.join(if json { "\n" } else { "\n\n" });
    if !out.stdout.is_empty() {
        out.stdout.push('\n');
    }
    out
}

fn single(result: Result<Rendered, CliError>, json: bool) -> Outcome {
    match result {
        Ok(r) => Outcome {
            code: 0,
            stdout: if json {
                format!("{:#}\n", r.json)
            } else {
                format!("{}\n", r.text)
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn target(job: Job, t: &Target, stdin: &mut dyn Read) -> Outcome {
    if let Some(path) = &t.input {
        return batch(job, path, t.json, t.seed);
    }
    let poly = t.poly.as_deref().expect("clap enforces --poly or --input");
    let prime = t
        .prime
        .as_deref()
        .expect("clap enforces --prime with --poly");
    let result = read_poly_arg(poly, stdin).and_then(|f| run_job(job, prime, &f, t.seed));
    single(result, t.json)
}

/// Runs the command line `args` (including the program name), reading
/// `--poly -` from `stdin`.
pub fn run_with_stdin<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match &cli.cmd {
        Command::Analyze(t) => target(Job::Analyze, t, stdin),
        Command::Dedekind(t) => target(Job::Dedekind, t, stdin),
        Command::Newton(n) => target(Job::Newton(n.phi.as_deref()), &n.target, stdin),
        Command::Expand(a) => single(expand(a, stdin), a.json),
    }
}

/// [`run_with_stdin`] on the process's standard input.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(args, &mut std::io::stdin().lock())
}
