//! The `penney` command line tool.
//!
//! Exit codes: 0 success, 1 verification failure, scheme violation or
//! integer without an expansion, 2 invalid input, 3 step budget exhausted.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cns::{CnsBase, CnsError, CnsOutcome};
use crate::negabase;
use crate::penney::{PenneyScheme, SchemeViolation};
use crate::poly::Poly;
use crate::repr::{format_digits, Base, Representation};
use crate::trinomial::{lift_representation, SequenceId};
use crate::verify::{self, SuiteConfig, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "penney",
    version,
    about = "Canonical number system expansions and negative-base block conversion"
)]
pub struct CliConfig {
    /// Step budget for the expansion algorithm.
    #[arg(long, global = true, default_value_t = crate::cns::DEFAULT_MAX_STEPS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_steps: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expansion of an integer over a polynomial base.
    Encode {
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Value of a digit string over a polynomial base.
    Decode {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        digits: String,
    },
    /// Base -b expansion of an integer, or the value of a base -b digit string.
    Negabase {
        #[arg(long)]
        base: u32,
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "digits",
            required_unless_present = "digits"
        )]
        value: Option<String>,
        #[arg(long)]
        digits: Option<String>,
    },
    /// Expansion over p built from the base -c expansion by block substitution.
    Convert {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Validates a scheme (p, c, d) and prints its block table.
    Scheme {
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Spreads an expansion over p to the expansion over p(X^k).
    Lift {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        digits: String,
        #[arg(long)]
        k: usize,
    },
    /// Terms of the sequences a, b or c.
    Seq {
        #[arg(long)]
        name: String,
        #[arg(long)]
        count: usize,
    },
    /// Runs verification checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    #[arg(long, default_value = "2,2,1")]
    pub poly: String,
    #[arg(long, default_value_t = 4)]
    pub c: u32,
    #[arg(long, default_value_t = 4)]
    pub d: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list of i, ii, ..., ix, remark, negabase, oracle, lift.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Sweep range for checks i, ii, iii, v, vi, ix and negabase.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub range: Option<i64>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also write the reports, with timings, as JSON lines to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

/// A failed command: what to print on standard error and the exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

impl From<CnsError> for Failure {
    fn from(e: CnsError) -> Self {
        let code = match e {
            CnsError::NotRepresentable { .. } => EXIT_FAILURE,
            CnsError::Exhausted { .. } => EXIT_EXHAUSTED,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Result printed on standard output: text lines and the JSON object.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            code: EXIT_OK,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// to the given streams. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(&cfg) {
        Ok(output) => {
            let body = match cfg.format {
                OutputFormat::Text => output.text,
                OutputFormat::Json => match &output.json {
                    Value::Array(lines) => lines.iter().map(|l| l.to_string() + "\n").collect(),
                    other => other.to_string() + "\n",
                },
            };
            let _ = out.write_all(body.as_bytes());
            output.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs the tool against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}

fn parse_poly(text: &str) -> Result<Poly<BigInt>, Failure> {
    let p: Poly<BigInt> = text.parse().map_err(|e| invalid(format!("--poly: {e}")))?;
    if !p.is_monic() {
        return Err(invalid(format!("--poly {text}: polynomial must be monic")));
    }
    Ok(p)
}

fn parse_int(flag: &str, text: &str) -> Result<BigInt, Failure> {
    text.trim()
        .parse()
        .map_err(|_| invalid(format!("--{flag}: {text:?} is not an integer")))
}

fn cns_base(text: &str) -> Result<CnsBase<BigInt>, Failure> {
    CnsBase::new(parse_poly(text)?).map_err(|e| invalid(format!("--poly {text}: {e}")))
}

fn build_scheme(
    args: &SchemeArgs,
    max_steps: usize,
) -> Result<Result<PenneyScheme<BigInt>, SchemeViolation>, Failure> {
    let p = parse_poly(&args.poly)?;
    if args.c < 2 {
        return Err(invalid("--c must be at least 2"));
    }
    Ok(PenneyScheme::build(p, args.c, args.d, max_steps))
}

fn violation_output(v: &SchemeViolation) -> Output {
    Output {
        text: format!("violation: {}\n", violation_name(v)),
        json: json!({ "violation": v }),
        code: EXIT_FAILURE,
    }
}

/// `BlockTooLong(56,7)` and similar.
pub fn violation_name(v: &SchemeViolation) -> String {
    match v {
        SchemeViolation::DigitNotRepresentable(i) => format!("DigitNotRepresentable({i})"),
        SchemeViolation::BlockTooLong(i, l) => format!("BlockTooLong({i},{l})"),
        other => format!("{other:?}"),
    }
}

fn execute(cfg: &CliConfig) -> Result<Output, Failure> {
    let max_steps = usize::try_from(cfg.max_steps).unwrap_or(usize::MAX);
    match &cfg.command {
        Command::Encode { poly, value } => {
            let base = cns_base(poly)?;
            let z = parse_int("value", value)?;
            match base.encode(&z, max_steps) {
                CnsOutcome::Digits(rep) => Ok(Output::ok(
                    format!("{rep}\n"),
                    json!({
                        "poly": base.poly().to_string(),
                        "value": z.to_string(),
                        "digits": rep.to_string(),
                        "length": rep.len(),
                    }),
                )),
                other => Err(other.into_result().expect_err("not digits").into()),
            }
        }
        Command::Decode { poly, digits } => {
            let base = cns_base(poly)?;
            let rep = Representation::parse(Base::Cns(base.poly().clone()), digits)
                .map_err(|e| invalid(format!("--digits: {e}")))?;
            let residue = base.decode_digits(rep.digits())?;
            let value = residue.as_constant().map(|v| v.to_string());
            let text = value.clone().unwrap_or_else(|| residue.to_string());
            Ok(Output::ok(
                format!("{text}\n"),
                json!({
                    "poly": base.poly().to_string(),
                    "digits": rep.to_string(),
                    "value": value,
                    "residue": residue.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Negabase {
            base,
            value,
            digits,
        } => {
            if *base < 2 {
                return Err(invalid("--base must be at least 2"));
            }
            let (z, rep) = match (value, digits) {
                (Some(v), _) => {
                    let z = parse_int("value", v)?;
                    let rep = negabase::encode(&z, *base).map_err(|e| invalid(e.to_string()))?;
                    (z, rep)
                }
                (None, Some(d)) => {
                    let rep = Representation::parse(Base::NegaBase(*base), d)
                        .map_err(|e| invalid(format!("--digits: {e}")))?;
                    (
                        negabase::decode(&rep).map_err(|e| invalid(e.to_string()))?,
                        rep,
                    )
                }
                (None, None) => return Err(invalid("one of --value or --digits is required")),
            };
            let text = if value.is_some() {
                rep.to_string()
            } else {
                z.to_string()
            };
            Ok(Output::ok(
                format!("{text}\n"),
                json!({
                    "base": base,
                    "value": z.to_string(),
                    "digits": rep.to_string(),
                    "length": rep.len(),
                }),
            ))
        }
        Command::Convert { value, scheme } => {
            let z = parse_int("value", value)?;
            let scheme = match build_scheme(scheme, max_steps)? {
                Ok(s) => s,
                Err(v) => return Ok(violation_output(&v)),
            };
            let nega = negabase::encode(&z, scheme.c()).map_err(|e| invalid(e.to_string()))?;
            let rep = scheme.convert(&z);
            Ok(Output::ok(
                format!("{rep}\n"),
                json!({
                    "poly": scheme.poly().to_string(),
                    "c": scheme.c(),
                    "d": scheme.d(),
                    "value": z.to_string(),
                    "negabase": nega.to_string(),
                    "lambda": scheme.lambda(&z),
                    "digits": rep.to_string(),
                    "length": rep.len(),
                }),
            ))
        }
        Command::Scheme { scheme } => {
            let scheme = match build_scheme(scheme, max_steps)? {
                Ok(s) => s,
                Err(v) => return Ok(violation_output(&v)),
            };
            let mut text = format!(
                "scheme {} c={} d={}\n",
                scheme.poly(),
                scheme.c(),
                scheme.d()
            );
            for i in 0..scheme.c() {
                text += &format!(
                    "{i} {} {}\n",
                    format_digits(scheme.block(i)),
                    scheme.block_lengths()[i as usize]
                );
            }
            let json = serde_json::to_value(scheme.to_document()).expect("document serializes");
            Ok(Output::ok(text, json))
        }
        Command::Lift { poly, digits, k } => {
            let p = parse_poly(poly)?;
            let rep = Representation::parse(Base::Cns(p), digits)
                .map_err(|e| invalid(format!("--digits: {e}")))?;
            let lifted = lift_representation(&rep, *k).map_err(|e| invalid(e.to_string()))?;
            let Base::Cns(big) = lifted.base() else {
                unreachable!("lifting keeps a polynomial base")
            };
            Ok(Output::ok(
                format!("{lifted}\n"),
                json!({
                    "poly": big.to_string(),
                    "k": k,
                    "digits": lifted.to_string(),
                    "length": lifted.len(),
                }),
            ))
        }
        Command::Seq { name, count } => {
            let id: SequenceId = name
                .parse()
                .map_err(|e: crate::trinomial::SequenceError| invalid(e.to_string()))?;
            let values: Vec<BigInt> = id.prefix(*count).map_err(|e| Failure {
                code: EXIT_FAILURE,
                message: e.to_string(),
            })?;
            let text: String = values.iter().map(|v| format!("{v}\n")).collect();
            Ok(Output::ok(
                text,
                json!({
                    "name": name.to_lowercase(),
                    "first_index": id.first_index(),
                    "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Verify(args) => run_verify(args),
    }
}

fn run_verify(args: &VerifyArgs) -> Result<Output, Failure> {
    let checks = verify::parse_suite(&args.suite).map_err(|e| invalid(format!("--suite: {e}")))?;
    let cfg = SuiteConfig {
        range: args.range,
        samples: args.samples,
        seed: args.seed,
        jobs: usize::try_from(args.jobs).unwrap_or(usize::MAX),
    };
    let reports = verify::run_suite(&checks, &cfg);
    if let Some(path) = &args.report {
        write_report(path, &reports)
            .map_err(|e| invalid(format!("--report {}: {e}", path.display())))?;
    }
    let mut text = String::new();
    let mut lines = Vec::new();
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        text += &format!(
            "{status} {} {} counterexamples={}\n",
            r.check_id,
            verify::describe_params(r),
            r.counterexample_count
        );
        lines.push(serde_json::to_value(r.without_timing()).expect("report serializes"));
    }
    let all_passed = reports.iter().all(|r| r.passed);
    Ok(Output {
        text,
        json: Value::Array(lines),
        code: if all_passed { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn write_report(path: &PathBuf, reports: &[VerificationReport]) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for r in reports {
        writeln!(w, "{}", r.to_json_line())?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("penney").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn encode_and_decode() {
        assert_eq!(
            call(&["encode", "--poly", "2,2,1", "--value", "3"]),
            (0, "1101\n".into(), "".into())
        );
        assert_eq!(
            call(&["encode", "--poly", "2,2,1", "--value", "-1"]).1,
            "11101\n"
        );
        assert_eq!(
            call(&["decode", "--poly", "2,2,1", "--digits", "11101"]).1,
            "-1\n"
        );
        assert_eq!(
            call(&["decode", "--poly", "2,2,1", "--digits", "10"]).1,
            "[0,1]\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["encode", "--poly", "2,-2,1", "--value", "-1"]).0,
            EXIT_FAILURE
        );
        assert_eq!(
            call(&[
                "encode",
                "--poly",
                "2,2,1",
                "--value",
                "4",
                "--max-steps",
                "3"
            ])
            .0,
            EXIT_EXHAUSTED
        );
        assert_eq!(
            call(&["encode", "--poly", "2,2,2", "--value", "4"]).0,
            EXIT_INVALID
        );
        assert_eq!(
            call(&["encode", "--poly", "2,2,1", "--value", "x"]).0,
            EXIT_INVALID
        );
        assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn negabase_both_ways() {
        assert_eq!(
            call(&["negabase", "--base", "4", "--value", "820"]).1,
            "1303030\n"
        );
        assert_eq!(
            call(&["negabase", "--base", "4", "--digits", "22222"]).1,
            "410\n"
        );
        assert_eq!(
            call(&["negabase", "--base", "1", "--value", "3"]).0,
            EXIT_INVALID
        );
    }

    #[test]
    fn scheme_violation() {
        let (code, out, _) = call(&["scheme", "--poly", "8,4,1", "--c", "64", "--d", "4"]);
        assert_eq!(code, EXIT_FAILURE);
        assert_eq!(out, "violation: BlockTooLong(56,7)\n");
        let (_, out, _) = call(&[
            "scheme", "--poly", "8,4,1", "--c", "64", "--d", "4", "--format", "json",
        ]);
        assert_eq!(out, "{\"violation\":{\"BlockTooLong\":[56,7]}}\n");
    }

    #[test]
    fn seq_lines() {
        assert_eq!(
            call(&["seq", "--name", "a", "--count", "5"]).1,
            "0\n1\n4\n5\n8\n"
        );
        assert_eq!(
            call(&["seq", "--name", "q", "--count", "5"]).0,
            EXIT_INVALID
        );
    }
}
