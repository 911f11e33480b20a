//! Command-line front end: tables, verification suites and plot data.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::export;
use crate::quadrature::{build_rule, RuleKind};
use crate::verify::{self, Check};
use crate::zonal::{zonal_csv, zonal_table, Space, ZonalFamily};
use crate::{Error, Rational};

#[derive(Debug, Parser)]
#[command(name = "mospher", version, about = "Matrix spherical functions on spheres and real projective spaces")]
pub struct Cli {
    /// Write data to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The SO(4) sequences of polynomials for the K-type of dimension ell+1.
    #[command(subcommand)]
    So4(So4Command),
    /// Spherical functions on the n-sphere.
    #[command(subcommand)]
    Sn(SnCommand),
    /// Zonal spherical functions of the rank-one spaces.
    Zonal(ZonalArgs),
    /// Quadrature rules.
    #[command(subcommand)]
    Quad(QuadCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Send the check report to stderr and a JSON summary to stdout.
    #[arg(long)]
    pub report_stderr: bool,
}

#[derive(Debug, Subcommand)]
pub enum So4Command {
    /// Emit P_w, its tilde form, Lambda_w, M_w and the weight.
    Gen {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the SO(4) invariant suite.
    Verify {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        max_w: usize,
        /// Quadrature node count (defaults to degree/2 + 8, or MOSPHER_NODES).
        #[arg(long)]
        nodes: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// CSV of H(u) on `grid` points of (-1, 1].
    Eval {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        grid: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SnCommand {
    /// Emit P_{w,delta}, H = Psi P and the eigenvalue.
    Fundamental {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, allow_negative_numbers = true)]
        delta: i32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Number of points of [0, 1] for CSV output.
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Emit the scalar function h_w and its ODE residual.
    Scalar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        w: usize,
    },
    /// Run the suite for the fundamental case (n, p).
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        max_w: usize,
        #[arg(long)]
        nodes: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
pub struct ZonalArgs {
    #[command(subcommand)]
    pub command: Option<ZonalCommand>,
    /// sphere, projreal, projcomplex, projquat or cayley.
    #[arg(long, required = true)]
    pub space: Option<String>,
    /// Dimension parameter (ignored for cayley).
    #[arg(long, required = true)]
    pub n: Option<usize>,
    /// Degree of the zonal function.
    #[arg(long, required = true)]
    pub j: Option<usize>,
    /// Number of angles in [0, π].
    #[arg(long, required = true)]
    pub grid: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ZonalCommand {
    /// Check the sphere/projective-space correspondence for k = 0..=max_k.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_k: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Jacobi parameters of the five families.
    Table {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleName {
    Chebyshev2,
    Legendre,
    Jacobi,
}

#[derive(Debug, Subcommand)]
pub enum QuadCommand {
    /// CSV "node,weight" of a Gaussian rule.
    Rule {
        #[arg(long, value_enum)]
        kind: RuleName,
        #[arg(long)]
        m: usize,
        /// Exponent of (1-y), as a rational such as 3/2.
        #[arg(long, default_value = "0")]
        alpha: String,
        /// Exponent of y, as a rational such as -1/2.
        #[arg(long, default_value = "0")]
        beta: String,
    },
}

/// Output of one command before it is written out.
struct Outcome {
    data: String,
    report: Vec<Check>,
    report_stderr: bool,
}

impl Outcome {
    fn data(data: String) -> Self {
        Outcome { data, report: Vec::new(), report_stderr: false }
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_) | Error::OutOfDomain(_) | Error::InsufficientNodes { .. } | Error::ShapeMismatch(_)
    )
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    s.trim().parse::<Rational>().map_err(|_| Error::InvalidParameter(format!("'{s}' is not a rational number")))
}

fn report_outcome(kind: &str, params: Vec<(&str, serde_json::Value)>, report: verify::SuiteReport, to_stderr: bool) -> Outcome {
    let data = if to_stderr {
        export::render(&export::verify_json(kind, params, &report.checks, &report.gram))
    } else {
        String::new()
    };
    Outcome { data, report: report.checks, report_stderr: to_stderr }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    Ok(match &cli.command {
        Command::So4(So4Command::Gen { ell, w, format }) => Outcome::data(match format {
            Format::Json => export::render(&export::so4_gen_json(*ell, *w)),
            Format::Csv => export::so4_gen_csv(*ell, *w),
        }),
        Command::So4(So4Command::Verify { ell, max_w, nodes, report }) => {
            let r = verify::so4_suite(*ell, *max_w, *nodes)?;
            report_outcome("so4.verify", vec![("ell", json!(ell)), ("max_w", json!(max_w))], r, report.report_stderr)
        }
        Command::So4(So4Command::Eval { ell, w, k, grid }) => Outcome::data(export::so4_eval_csv(*ell, *w, *k, *grid)?),
        Command::Sn(SnCommand::Fundamental { n, p, w, delta, format, grid }) => Outcome::data(match format {
            Format::Json => export::render(&export::sn_fundamental_json(*n, *p, *w, *delta)?),
            Format::Csv => export::sn_fundamental_csv(*n, *p, *w, *delta, *grid)?,
        }),
        Command::Sn(SnCommand::Scalar { n, p, w }) => Outcome::data(export::render(&export::sn_scalar_json(*n, *p, *w)?)),
        Command::Sn(SnCommand::Verify { n, p, max_w, nodes, report }) => {
            let r = verify::sn_suite(*n, *p, *max_w, *nodes)?;
            report_outcome(
                "sn.verify",
                vec![("n", json!(n)), ("p", json!(p)), ("max_w", json!(max_w))],
                r,
                report.report_stderr,
            )
        }
        Command::Zonal(args) => match &args.command {
            Some(ZonalCommand::Check { n, max_k, report }) => {
                let checks = verify::zonal_suite(*n, *max_k)?;
                let r = verify::SuiteReport { checks, gram: Vec::new() };
                report_outcome("zonal.check", vec![("n", json!(n)), ("max_k", json!(max_k))], r, report.report_stderr)
            }
            Some(ZonalCommand::Table { n }) => Outcome::data(export::render(&export::zonal_table_json(&zonal_table(*n)?))),
            None => {
                let (space, n, j, grid) = match (&args.space, args.n, args.j, args.grid) {
                    (Some(s), Some(n), Some(j), Some(g)) => (s, n, j, g),
                    _ => return Err(Error::InvalidParameter("zonal needs --space, --n, --j and --grid".into())),
                };
                let family = ZonalFamily::new(space.parse::<Space>()?, n)?;
                Outcome::data(zonal_csv(&family, j, grid))
            }
        },
        Command::Quad(QuadCommand::Rule { kind, m, alpha, beta }) => {
            let kind = match kind {
                RuleName::Chebyshev2 => RuleKind::Chebyshev2,
                RuleName::Legendre => RuleKind::Legendre,
                RuleName::Jacobi => RuleKind::Jacobi { alpha: parse_rational(alpha)?, beta: parse_rational(beta)? },
            };
            Outcome::data(build_rule(&kind, *m)?.to_csv())
        }
    })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 on success, 1 when a check fails or a computation
/// errors, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if usage_error(&e) { 2 } else { 1 };
        }
    };
    let mut report = String::new();
    for c in &outcome.report {
        report.push_str(&c.line());
        report.push('\n');
    }
    let (mut data, report_sink_is_err) = (outcome.data, outcome.report_stderr);
    if !report_sink_is_err {
        data = report + &data;
    } else if err.write_all(report.as_bytes()).is_err() {
        return 1;
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, data.as_bytes()).map_err(|e| e.to_string()),
        None => out.write_all(data.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    if outcome.report.iter().all(|c| c.pass) {
        0
    } else {
        1
    }
}
