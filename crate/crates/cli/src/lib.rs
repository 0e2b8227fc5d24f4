//! The `padic` command-line calculator.
//!
//! Exit codes: 0 on success, 2 for usage and parse errors, 3 for domain
//! errors (no square root, outside a series' domain, division by zero, bad
//! Hensel seed, negative valuation on integer output).

pub mod expr;

use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use padic::{
    format, hensel_lift, make_context, parse, to_integer, IntPolynomial, PadicContext, PadicError,
    PadicNumber, PrintMode, DEFAULT_PRECISION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "padic", version, about = "Fixed-precision p-adic calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct CliConfig {
    /// The prime p.
    #[arg(short = 'p', long = "prime")]
    pub p: u64,
    /// Base-p digits kept in the unit part.
    #[arg(long = "prec", default_value_t = DEFAULT_PRECISION)]
    pub prec: u32,
    /// Output format: series, terse or val-unit.
    #[arg(long, default_value = "series", value_parser = PrintMode::from_str)]
    pub format: PrintMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Mode(PrintMode),
    /// The integer lift `u * p^v`.
    Integer,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "integer" => Ok(Target::Integer),
            other => other.parse().map(Target::Mode),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression such as `sqrt(6) + 1/(1-5)`.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        config: CliConfig,
    },
    /// Lift a simple root of an integer polynomial from a seed modulo p.
    Hensel {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        seed: BigInt,
        #[command(flatten)]
        config: CliConfig,
    },
    /// Re-render a value (integer, fraction or series) in another format.
    Convert {
        #[arg(allow_hyphen_values = true)]
        value: String,
        /// series, terse, val-unit or integer; defaults to --format.
        #[arg(long, value_parser = Target::from_str)]
        to: Option<Target>,
        #[command(flatten)]
        config: CliConfig,
    },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, err: &PadicError) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("{}: {err}\n", err.name()),
        }
    }
}

fn context(config: &CliConfig) -> Result<Arc<PadicContext>, Outcome> {
    make_context(config.p, config.prec, config.format).map_err(|e| Outcome::fail(EXIT_USAGE, &e))
}

fn render(x: &PadicNumber, config: &CliConfig) -> String {
    format(x, config.format)
}

pub fn cmd_eval(expr: &str, config: &CliConfig) -> Outcome {
    let ctx = match context(config) {
        Ok(c) => c,
        Err(o) => return o,
    };
    match expr::evaluate(expr, &ctx) {
        Ok(x) => Outcome::ok(format!("{}\n{}\n", render(&x, config), ctx)),
        Err(expr::EvalError::Syntax(e)) => Outcome::fail(EXIT_USAGE, &e),
        Err(expr::EvalError::Domain(e)) => Outcome::fail(EXIT_DOMAIN, &e),
    }
}

pub fn cmd_hensel(poly: &str, seed: &BigInt, config: &CliConfig) -> Outcome {
    let ctx = match context(config) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let f: IntPolynomial = match poly.parse() {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_USAGE, &e),
    };
    match hensel_lift(&f, seed, &ctx) {
        Ok(r) => Outcome::ok(format!(
            "{}\niterations: {}\n",
            render(&r.root, config),
            r.iterations
        )),
        Err(e) => Outcome::fail(EXIT_DOMAIN, &e),
    }
}

pub fn cmd_convert(value: &str, config: &CliConfig, to: Option<Target>) -> Outcome {
    let ctx = match context(config) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let x = match parse(value, &ctx) {
        Ok(x) => x,
        Err(e) => return Outcome::fail(EXIT_USAGE, &e),
    };
    match to.unwrap_or(Target::Mode(config.format)) {
        Target::Mode(mode) => Outcome::ok(format!("{}\n", format(&x, mode))),
        Target::Integer => match to_integer(&x) {
            Ok(k) => Outcome::ok(format!("{k}\n")),
            Err(e) => Outcome::fail(EXIT_DOMAIN, &e),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
    match cli.command {
        Command::Eval { expr, config } => cmd_eval(&expr, &config),
        Command::Hensel { poly, seed, config } => cmd_hensel(&poly, &seed, &config),
        Command::Convert { value, to, config } => cmd_convert(&value, &config, to),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("padic").chain(args.iter().copied()))
    }

    #[test]
    fn eval_prints_value_and_tag() {
        let out = run_args(&["eval", "-p", "5", "3"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "3\nQQ_5 (of precision 20)\n");
    }

    #[test]
    fn composite_prime_is_usage_error() {
        let out = run_args(&["eval", "-p", "4", "3"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.starts_with("PrimalityError"));
    }

    #[test]
    fn missing_prime_is_usage_error() {
        let out = run_args(&["eval", "3"]);
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn convert_to_integer() {
        let out = run_args(&["convert", "-p", "5", "-1", "--prec", "4", "--to", "integer"]);
        assert_eq!(out.stdout, "624\n");
        let out = run_args(&["convert", "-p", "5", "1/5", "--to", "integer"]);
        assert_eq!(out.code, EXIT_DOMAIN);
        assert!(out.stderr.starts_with("NegativeValuation"));
    }

    #[test]
    fn hensel_parse_error() {
        let out = run_args(&["hensel", "-p", "5", "x^^2", "--seed", "1"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.starts_with("SyntaxError"));
    }

    #[test]
    fn negative_seed() {
        let out = run_args(&[
            "hensel", "-p", "7", "x^2-2", "--seed", "-3", "--format", "terse",
        ]);
        assert_eq!(out.code, 0, "{out:?}");
    }
}
