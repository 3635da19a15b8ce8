//! Argument parsing and dispatch for the `berezin` command.

use std::fs;

use berezin_core::berezin::{integrate, BerezinSection, IntegrationBackend};
use berezin_core::lie_super::{unimodularity_check, SubalgebraSpec};
use berezin_core::scalar::Rational;
use berezin_core::suites::{self, DEFAULT_SEED, EXAMPLES};
use berezin_core::text::{format_grassmann, format_integral, parse_lie_algebra, parse_scalar, parse_superfunction, parse_supermatrix};
use berezin_core::Error;
use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "berezin", version, about = "Exact Berezin calculus on superdomains and small supergroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Berezinian of the supermatrix in FILE.
    Ber { file: String },
    /// Integrate the superfunction in FILE as a density against D(x,ξ).
    Integrate {
        file: String,
        /// `gaussian`, or `box a1 b1 a2 b2 ...` with one interval per even coordinate.
        #[arg(long, num_args = 1.., required = true, allow_hyphen_values = true)]
        backend: Vec<String>,
    },
    /// Decide unimodularity of a subalgebra of the Lie superalgebra in FILE.
    Unimodular {
        file: String,
        /// Comma-separated 0-based basis indices spanning the subalgebra (empty for h = 0).
        #[arg(long, allow_hyphen_values = true)]
        subalgebra: String,
    },
    /// List or run the built-in worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List,
    Run { name: String },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome::with_code(EXIT_OK, stdout)
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        Outcome {
            code: exit_code(err),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parse and input errors are usage errors; everything else is a
/// mathematical failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Backend(_) | Error::IndexOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_MATH,
    }
}

/// Runs the command line `argv` (including the program name).
pub fn parse_and_dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    dispatch(cli.command)
}

fn read(file: &str) -> Result<String, Outcome> {
    fs::read_to_string(file).map_err(|e| Outcome::usage(format!("cannot read {file}: {e}")))
}

fn dispatch(command: Command) -> Outcome {
    let result = match command {
        Command::Ber { file } => read(&file).and_then(|src| ber(&src)),
        Command::Integrate { file, backend } => read(&file).and_then(|src| integrate_file(&src, &backend)),
        Command::Unimodular { file, subalgebra } => read(&file).and_then(|src| unimodular(&src, &subalgebra)),
        Command::Examples { action } => examples(action),
        Command::Verify { suite, seed } => verify(&suite, seed),
    };
    result.unwrap_or_else(|o| o)
}

fn fail(err: Error) -> Outcome {
    Outcome::error(&err)
}

fn ber(src: &str) -> Result<Outcome, Outcome> {
    let x = parse_supermatrix(src).map_err(fail)?;
    let b = x.berezinian().map_err(fail)?;
    Ok(Outcome::ok(format!("{}\n", format_grassmann(&b))))
}

fn parse_backend(spec: &[String], m: usize) -> Result<IntegrationBackend, Outcome> {
    match spec.split_first() {
        Some((kind, rest)) if kind == "gaussian" && rest.is_empty() => Ok(IntegrationBackend::gaussian(m)),
        Some((kind, rest)) if kind == "box" => {
            if rest.len() != 2 * m {
                return Err(Outcome::usage(format!(
                    "box backend needs {} bounds for {m} even coordinates, got {}",
                    2 * m,
                    rest.len()
                )));
            }
            let bounds: Vec<Rational> = rest
                .iter()
                .map(|b| match parse_scalar(b) {
                    Ok(s) if s.gauss_exponent() == 0 => Ok(s.value().clone()),
                    _ => Err(Outcome::usage(format!("bad box bound '{b}'"))),
                })
                .collect::<Result<_, _>>()?;
            let pairs: Vec<(Rational, Rational)> =
                bounds.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
            IntegrationBackend::boxed(&pairs).map_err(|e| Outcome::usage(e.to_string()))
        }
        _ => Err(Outcome::usage("--backend must be 'gaussian' or 'box a1 b1 ...'".into())),
    }
}

fn integrate_file(src: &str, backend: &[String]) -> Result<Outcome, Outcome> {
    let f = parse_superfunction(src).map_err(fail)?;
    let backend = parse_backend(backend, f.shape().m())?;
    let value = integrate(&BerezinSection::new(f), &backend).map_err(fail)?;
    Ok(Outcome::ok(format!("{}\n", format_integral(&value))))
}

fn parse_indices(list: &str, dim: usize) -> Result<Vec<usize>, Outcome> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i < dim => Ok(i),
            Ok(i) => Err(Outcome::usage(format!("subalgebra index {i} out of range 0..{dim}"))),
            Err(_) => Err(Outcome::usage(format!("bad subalgebra index '{t}'"))),
        })
        .collect()
}

fn unimodular(src: &str, subalgebra: &str) -> Result<Outcome, Outcome> {
    let g = parse_lie_algebra(src).map_err(fail)?;
    let span = parse_indices(subalgebra, g.dim())?;
    let h = SubalgebraSpec::new(&g, span).map_err(fail)?;
    let verdict = unimodularity_check(&g, &h).map_err(fail)?;
    let mut out = format!("{verdict}\n");
    for (name, s) in &verdict.supertraces {
        out.push_str(&format!("str(ad {name} on g/h) = {}\n", berezin_core::scalar::format_rational(s)));
    }
    Ok(Outcome::ok(out))
}

fn examples(action: ExamplesAction) -> Result<Outcome, Outcome> {
    match action {
        ExamplesAction::List => {
            let lines: Vec<String> = EXAMPLES.iter().map(|(n, d)| format!("{n}\t{d}\n")).collect();
            Ok(Outcome::ok(lines.concat()))
        }
        ExamplesAction::Run { name } => {
            if !EXAMPLES.iter().any(|(n, _)| *n == name) {
                return Err(Outcome::usage(format!("unknown example {name}; see 'examples list'")));
            }
            let (text, ok) = suites::run_example(&name).map_err(fail)?;
            let status = if ok { "all equalities hold" } else { "an equality FAILED" };
            Ok(Outcome::with_code(
                if ok { EXIT_OK } else { EXIT_MATH },
                format!("{text}\n{name}: {status}\n"),
            ))
        }
    }
}

fn verify(suite: &str, seed: u64) -> Result<Outcome, Outcome> {
    if suite != "all" && !suites::SUITES.contains(&suite) {
        return Err(Outcome::usage(format!(
            "unknown suite {suite}; expected one of {} or all",
            suites::SUITES.join(", ")
        )));
    }
    let reports = suites::run(suite, seed).map_err(fail)?;
    let mut out = format!("seed {seed}\n");
    for r in &reports {
        out.push_str(&format!("{r}\n"));
    }
    let ok = reports.iter().all(|r| r.passed());
    Ok(Outcome::with_code(if ok { EXIT_OK } else { EXIT_MATH }, out))
}
