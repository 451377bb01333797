//! `arclen` — arc lengths of function graphs from the command line.
//!
//! Lengths come from uniform polygonal sums `L_n`, certified by the
//! bound `|L − L_n| ≤ M(b−a)²/(2n)` whenever `M` dominates `|f''|`;
//! integrals come from left-endpoint Euler sums. Expressions use a small
//! calculus-text grammar over the variable `x` (see `--help` or the
//! README).

mod output;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::Value;

use arclen_core::catalog::{self, builtin_problem, make_exercise, verify_exercise, VerifyReport};
use arclen_core::quadrature::{arc_integrand, euler_sum};
use arclen_core::rectify::{
    self, arc_length, display_4dp, error_bound, min_subdivisions, polygonal_table, MSource,
    PolyResult,
};
use arclen_core::{parse, Expr64, Interval64};

use output::{num, opt_num, Record};

#[derive(Parser)]
#[command(
    name = "arclen",
    version,
    about = "Arc lengths of function graphs via uniform polygonal sums, \
             with certified error bounds and exactly solvable exercises",
    after_help = "Expressions use the variable `x`, the constants `pi` and `e`, \
                  the operators + - * / ^, and the functions sin cos tan atan \
                  exp log sqrt sinh cosh abs (log is natural)."
)]
struct Cli {
    /// Emit a JSON record on stdout instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON record to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arc length of f over [a, b] to a target tolerance
    Length {
        /// The function f(x)
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Target bound on |L - L_n|
        #[arg(long)]
        tol: f64,
        /// Upper bound for |f''| on (a, b); sampled when omitted
        #[arg(long = "M")]
        m: Option<f64>,
    },
    /// Polygonal lengths L_n for a list of subdivision counts
    Table {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Comma-separated subdivision counts, strictly increasing
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        ns: Vec<u64>,
        /// Fill the bound column with M(b-a)^2/(2n)
        #[arg(long = "M")]
        m: Option<f64>,
    },
    /// The a-priori bound M(b-a)^2/(2n)
    Bound {
        #[arg(long = "M")]
        m: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        n: u64,
    },
    /// Least n whose bound meets a tolerance
    MinN {
        #[arg(long = "M")]
        m: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        tol: f64,
    },
    /// Left-endpoint Euler sum of f over [a, b]
    Integrate {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        n: u64,
    },
    /// Print the arc-length integrand sqrt(1 + f'(x)^2)
    Integrand {
        #[arg(long)]
        f: String,
    },
    /// Print the symbolic derivative f'
    Diff {
        #[arg(long)]
        f: String,
    },
    /// Build an exercise from functions m and n with f' = m/2n - n/2m
    Generate {
        /// Numerator function m(x), nonzero on [a, b]
        #[arg(long)]
        m: String,
        /// Denominator function n(x), nonzero on [a, b]
        #[arg(long)]
        n: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        /// Optional curve with f' = m/2n - n/2m
        #[arg(long)]
        f: Option<String>,
        /// Optional exact arc length, as an expression
        #[arg(long)]
        exact: Option<String>,
    },
    /// Check an exercise numerically against its exact answer
    Verify {
        /// A built-in problem: parabola, semicubical, x43, cosh, pyth2, pyth3
        #[arg(long, value_name = "NAME",
              conflicts_with_all = ["m", "n", "a", "b", "f", "exact"])]
        problem: Option<String>,
        #[arg(long, required_unless_present = "problem")]
        m: Option<String>,
        #[arg(long, required_unless_present = "problem")]
        n: Option<String>,
        #[arg(long, required_unless_present = "problem")]
        a: Option<f64>,
        #[arg(long, required_unless_present = "problem")]
        b: Option<f64>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, required_unless_present = "problem")]
        exact: Option<String>,
        /// Residual tolerance for the pass verdict
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr64> {
    parse(text).with_context(|| format!("in expression `{text}`"))
}

fn interval(a: f64, b: f64) -> Result<Interval64> {
    Ok(Interval64::new(a, b)?)
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Length { f, a, b, tol, m } => {
            let expr = parse_expr(&f)?;
            let iv = interval(a, b)?;
            let report = arc_length(&expr, iv, tol, m)?;

            let mut record = Record::new("length");
            record
                .input("f", Value::String(f))
                .input("a", num(a))
                .input("b", num(b))
                .input("tol", num(tol))
                .input("M", opt_num(m));
            record
                .result("estimate", num(report.estimate))
                .result("estimate_4dp", Value::String(display_4dp(report.estimate)))
                .result("n_used", Value::from(report.n_used))
                .result("bound", num(report.bound_used))
                .result("M_used", num(report.m_used))
                .result(
                    "M_source",
                    Value::String(
                        match report.m_source {
                            MSource::User => "user",
                            MSource::Sampled => "sampled",
                        }
                        .into(),
                    ),
                )
                .result("rows", rows_value(&report.rows));
            if report.m_source == MSource::Sampled {
                record.warn(format!(
                    "M was sampled ({} midpoints of |f''|, safety factor 1.25); \
                     the bound is certified only if it dominates sup |f''|",
                    rectify::M_ESTIMATE_SAMPLES
                ));
            }
            if report.m_boundary_warning {
                record.warn(
                    "|f''| peaks in the first or last sample cell and may be unbounded \
                     at an endpoint; supply --M or use the uncertified table",
                );
            }

            let mut text = String::new();
            let _ = writeln!(text, "estimate  {}", report.estimate);
            let _ = writeln!(text, "display   {}", display_4dp(report.estimate));
            let _ = writeln!(text, "n_used    {}", report.n_used);
            let _ = writeln!(
                text,
                "M         {} ({})",
                report.m_used,
                match report.m_source {
                    MSource::User => "user",
                    MSource::Sampled => "sampled",
                }
            );
            let _ = writeln!(text, "bound     {}", report.bound_used);
            record.emit(json, out, &text)
        }

        Command::Table { f, a, b, ns, m } => {
            let expr = parse_expr(&f)?;
            let iv = interval(a, b)?;
            let rows = polygonal_table(&expr, iv, &ns, m)?;

            let mut record = Record::new("table");
            record
                .input("f", Value::String(f))
                .input("a", num(a))
                .input("b", num(b))
                .input(
                    "ns",
                    Value::Array(ns.iter().map(|&n| Value::from(n)).collect()),
                )
                .input("M", opt_num(m));
            record.result("rows", rows_value(&rows));

            record.emit(json, out, &render_table(&rows, m.is_some()))
        }

        Command::Bound { m, a, b, n } => {
            validate_m(m)?;
            let iv = interval(a, b)?;
            if n == 0 {
                return Err(anyhow!("subdivision count must be positive"));
            }
            let bound = error_bound(m, iv, n);
            let mut record = Record::new("bound");
            record
                .input("M", num(m))
                .input("a", num(a))
                .input("b", num(b))
                .input("n", Value::from(n));
            record
                .result("bound", num(bound))
                .result("bound_4dp", Value::String(display_4dp(bound)));
            record.emit(json, out, &format!("{bound}\n"))
        }

        Command::MinN { m, a, b, tol } => {
            let iv = interval(a, b)?;
            let n = min_subdivisions(m, iv, tol)?;
            let mut record = Record::new("min-n");
            record
                .input("M", num(m))
                .input("a", num(a))
                .input("b", num(b))
                .input("tol", num(tol));
            record.result("n", Value::from(n));
            record.emit(json, out, &format!("{n}\n"))
        }

        Command::Integrate { f, a, b, n } => {
            let expr = parse_expr(&f)?;
            let iv = interval(a, b)?;
            let value = euler_sum(&expr, iv, n)?;
            let mut record = Record::new("integrate");
            record
                .input("f", Value::String(f))
                .input("a", num(a))
                .input("b", num(b))
                .input("n", Value::from(n));
            record
                .result("value", num(value))
                .result("value_4dp", Value::String(display_4dp(value)));
            record.emit(json, out, &format!("{value}\n"))
        }

        Command::Integrand { f } => {
            let expr = parse_expr(&f)?;
            let integrand = arc_integrand(&expr)?;
            let mut record = Record::new("integrand");
            record.input("f", Value::String(f));
            record.result("integrand", Value::String(integrand.to_string()));
            record.emit(json, out, &format!("{integrand}\n"))
        }

        Command::Diff { f } => {
            let expr = parse_expr(&f)?;
            let derivative = expr.differentiate()?;
            let mut record = Record::new("diff");
            record.input("f", Value::String(f));
            record.result("derivative", Value::String(derivative.to_string()));
            record.emit(json, out, &format!("{derivative}\n"))
        }

        Command::Generate { m, n, a, b, f, exact } => {
            let m_expr = parse_expr(&m)?;
            let n_expr = parse_expr(&n)?;
            let iv = interval(a, b)?;
            let f_expr = f.as_deref().map(parse_expr).transpose()?;
            let exact_expr = exact.as_deref().map(parse_expr).transpose()?;
            let exercise = make_exercise(m_expr, n_expr, iv, f_expr, exact_expr)?;

            let mut record = Record::new("generate");
            record
                .input("m", Value::String(m))
                .input("n", Value::String(n))
                .input("a", num(a))
                .input("b", num(b))
                .input(
                    "f",
                    f.clone().map(Value::String).unwrap_or(Value::Null),
                )
                .input(
                    "exact",
                    exact.clone().map(Value::String).unwrap_or(Value::Null),
                );
            record
                .result("f_prime", Value::String(exercise.f_prime.to_string()))
                .result("integrand", Value::String(exercise.integrand.to_string()));
            let exact_value = exercise
                .exact_answer
                .as_ref()
                .map(|e| e.eval(0.0))
                .transpose()?;
            record.result("exact_value", opt_num(exact_value));

            let mut text = String::new();
            let _ = writeln!(text, "f_prime    {}", exercise.f_prime);
            let _ = writeln!(text, "integrand  {}", exercise.integrand);
            let _ = writeln!(text, "interval   [{a}, {b}]");
            if let Some(f) = &exercise.f {
                let _ = writeln!(text, "f          {f}");
            }
            if let (Some(e), Some(v)) = (&exercise.exact_answer, exact_value) {
                let _ = writeln!(text, "exact      {e} = {v}");
            }
            record.emit(json, out, &text)
        }

        Command::Verify {
            problem,
            m,
            n,
            a,
            b,
            f,
            exact,
            tol,
        } => {
            let (report, label) = match problem {
                Some(name) => {
                    let problem = builtin_problem::<f64>(&name)?;
                    (problem.verify(tol)?, name)
                }
                None => {
                    // clap guarantees these are present without --problem
                    let m_expr = parse_expr(&m.expect("required by clap"))?;
                    let n_expr = parse_expr(&n.expect("required by clap"))?;
                    let iv = interval(a.expect("required"), b.expect("required"))?;
                    let f_expr = f.as_deref().map(parse_expr).transpose()?;
                    let exact_expr = parse_expr(&exact.expect("required by clap"))?;
                    let exercise =
                        make_exercise(m_expr, n_expr, iv, f_expr, Some(exact_expr))?;
                    (verify_exercise(&exercise, tol)?, "custom".to_string())
                }
            };

            let mut record = Record::new("verify");
            record
                .input("problem", Value::String(label))
                .input("tol", num(tol));
            record
                .result("passed", Value::Bool(report.passed))
                .result("exact", num(report.exact))
                .result("euler", num(report.euler))
                .result("euler_refined", num(report.euler_refined))
                .result("euler_n", Value::from(catalog::VERIFY_EULER_SUBDIVISIONS))
                .result("integral_residual", num(report.integral_residual))
                .result(
                    "polygonal_residual",
                    opt_num(report.polygonal_residual),
                )
                .result("rate_constant", num(report.rate_constant))
                .result("cross_check_gap", num(report.cross_check_gap))
                .result("cross_check_limit", num(report.cross_check_limit));

            record.emit(json, out, &render_verify(&report))
        }
    }
}

fn validate_m(m: f64) -> Result<()> {
    if m.is_finite() && m >= 0.0 {
        Ok(())
    } else {
        Err(anyhow!("M must be a finite nonnegative number, got {m}"))
    }
}

fn rows_value(rows: &[PolyResult<f64>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                obj.insert("n".into(), Value::from(row.n));
                obj.insert("delta_x".into(), num(row.delta_x));
                obj.insert("length".into(), num(row.length));
                obj.insert(
                    "length_4dp".into(),
                    Value::String(display_4dp(row.length)),
                );
                obj.insert("bound".into(), opt_num(row.bound));
                Value::Object(obj)
            })
            .collect(),
    )
}

fn render_table(rows: &[PolyResult<f64>], with_bound: bool) -> String {
    let mut text = String::new();
    if with_bound {
        let _ = writeln!(text, "{:>10}  {:>13}  {:>13}", "n", "L_n", "bound");
    } else {
        let _ = writeln!(text, "{:>10}  {:>13}", "n", "L_n");
    }
    for row in rows {
        if with_bound {
            let bound = row.bound.expect("bound present when M is supplied");
            let _ = writeln!(
                text,
                "{:>10}  {:>13}  {:>13}",
                row.n,
                display_4dp(row.length),
                display_4dp(bound)
            );
        } else {
            let _ = writeln!(text, "{:>10}  {:>13}", row.n, display_4dp(row.length));
        }
    }
    text
}

fn render_verify(report: &VerifyReport<f64>) -> String {
    let status = if report.passed { "PASS" } else { "FAIL" };
    let poly = match report.polygonal_residual {
        Some(r) => format!("{r:.3e}"),
        None => "n/a".into(),
    };
    format!(
        "{status} exact={} euler={} residual={:.3e} poly_residual={poly} \
         cross_gap={:.3e} cross_limit={:.3e}\n",
        report.exact,
        report.euler,
        report.integral_residual,
        report.cross_check_gap,
        report.cross_check_limit,
    )
}
