//! Command-line front end for the dual-real calculus library.
//!
//! One request per invocation. Results go to stdout, either as text or,
//! with `--json`, as a single JSON object echoing the inputs alongside the
//! results and sampling provenance. Exit codes: 0 on success or a passing
//! verification, 1 when a verification fails, 2 on usage errors, 3 on
//! parse, domain, or numeric errors.

use clap::{Parser, Subcommand};
use dualcalc::{
    check_integrability, derivative_at, estimate_integral, finite_difference_derivative_at,
    type_theta_derivative_at, verify_ftc_part1, verify_ftc_part2, verify_limit_definition,
    DerivativeReport, DualFunction, DualReal, Error, ExtremaMethod, IntegrateOptions, OrderKind,
    Relation, TypedInterval,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "dualcalc",
    version,
    about = "Calculator for calculus over the dual reals (numbers a + b*eps with eps^2 = 0)",
    after_help = "Dual literals look like `2`, `3eps`, `1+2eps`, or `1.5-0.25eps`. \
                  Expressions use one variable `x` with + - * / ^ and sin, cos, exp, log."
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the sampling subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

fn theta_arg() -> clap::builder::RangedU64ValueParser {
    clap::value_parser!(u64).range(1..=2)
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at a dual point.
    Eval {
        expr: String,
        /// Evaluation point, as a dual literal.
        #[arg(long)]
        at: String,
    },

    /// Differentiate an expression at a point.
    Diff {
        expr: String,
        /// Point of differentiation, as a dual literal.
        #[arg(long)]
        at: String,
        /// Restrict to one order (1 or 2); affects reporting only, the
        /// derivative value is the same.
        #[arg(long, value_parser = theta_arg())]
        theta: Option<u64>,
        /// Central-difference step for --finite-difference.
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
        /// Estimate by central differences instead of the exact rule.
        #[arg(long)]
        finite_difference: bool,
    },

    /// Check the component partial-derivative equations at a point by
    /// central finite differences.
    #[command(name = "check-cr")]
    CheckCr {
        expr: String,
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
    },

    /// Sample difference quotients around a point and test them against a
    /// derivative candidate within eps.
    #[command(name = "limit-check")]
    LimitCheck {
        expr: String,
        #[arg(long)]
        at: String,
        /// Candidate derivative as a dual literal; defaults to the exact
        /// derivative at the point.
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Sampling radius around the point.
        #[arg(long, default_value_t = 1e-4)]
        delta: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Sample only increments comparable with zero in this order.
        #[arg(long, value_parser = theta_arg())]
        theta: Option<u64>,
    },

    /// Compare two dual values under both orders.
    Compare { x: String, y: String },

    /// Bracket the integral of an expression over a typed interval.
    Integrate {
        expr: String,
        /// Lower endpoint, as a dual literal.
        #[arg(long)]
        from: String,
        /// Upper endpoint, as a dual literal.
        #[arg(long)]
        to: String,
        /// Which order defines the interval and directs the sums.
        #[arg(long = "type", value_parser = theta_arg(), default_value_t = 1)]
        theta: u64,
        /// Stop once the bracket gap is below this norm.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        /// Give up after this many partition halvings.
        #[arg(long, default_value_t = 16)]
        depth: usize,
        /// Lattice points per axis for cell extrema.
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Certified interval extrema instead of lattice sampling.
        #[arg(long)]
        certified: bool,
        /// Also search for a partition with bracket gap strictly below
        /// this dual literal, in the interval's order.
        #[arg(long)]
        gap_below: Option<String>,
    },

    /// Verify the fundamental theorem of calculus on a typed interval.
    #[command(name = "ftc-check")]
    FtcCheck {
        expr: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long = "type", value_parser = theta_arg(), default_value_t = 1)]
        theta: u64,
        /// Which direction: 1 samples difference quotients of the running
        /// integral, 2 integrates the derivative and compares endpoints.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=2))]
        part: u64,
        /// Tolerance; defaults to 1e-3 for part 2 and 5e-2 for part 1.
        #[arg(long)]
        tol: Option<f64>,
        /// Part 1 only: quotient base point; defaults to the interval
        /// midpoint.
        #[arg(long)]
        at: Option<String>,
        /// Part 1 only: increment size.
        #[arg(long, default_value_t = 1e-2)]
        h: f64,
        /// Part 1 only: number of sampled increments.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        grid: usize,
        #[arg(long)]
        certified: bool,
    },
}

#[derive(Serialize)]
struct DualOut {
    re: f64,
    ze: f64,
    literal: String,
}

impl From<DualReal> for DualOut {
    fn from(x: DualReal) -> DualOut {
        DualOut { re: x.re(), ze: x.ze(), literal: x.to_string() }
    }
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    code: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    offset: Option<usize>,
}

fn parse_dual(src: &str) -> Result<DualReal, Error> {
    src.trim().parse()
}

fn parse_theta(theta: u64) -> OrderKind {
    match theta {
        1 => OrderKind::Type1,
        _ => OrderKind::Type2,
    }
}

fn parse_interval(from: &str, to: &str, theta: u64) -> Result<TypedInterval, Error> {
    TypedInterval::new(parse_dual(from)?, parse_dual(to)?, parse_theta(theta))
}

fn options(tol: f64, depth: usize, grid: usize, certified: bool) -> IntegrateOptions {
    IntegrateOptions {
        tol,
        max_depth: depth,
        extrema: if certified {
            ExtremaMethod::Certified
        } else {
            ExtremaMethod::Lattice { grid }
        },
    }
}

fn emit<T: Serialize>(json: bool, object: &T, text: &str) {
    if json {
        println!("{}", serde_json::to_string(object).expect("report serializes"));
    } else {
        println!("{text}");
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            let offset = match &err {
                Error::Parse { offset, .. } => Some(*offset),
                _ => None,
            };
            if cli.json {
                #[derive(Serialize)]
                struct Wrapper<'a> {
                    error: ErrorOut<'a>,
                }
                let wrapped =
                    Wrapper { error: ErrorOut { code: err.code(), message: err.to_string(), offset } };
                println!("{}", serde_json::to_string(&wrapped).expect("error serializes"));
            } else {
                eprintln!("error[{}]: {err}", err.code());
            }
            3
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Eval { expr, at } => eval(cli, expr, at),
        Command::Diff { expr, at, theta, step, finite_difference } => {
            diff(cli, expr, at, *theta, *step, *finite_difference)
        }
        Command::CheckCr { expr, at, step } => check_cr(cli, expr, at, *step),
        Command::LimitCheck { expr, at, candidate, eps, delta, samples, theta } => {
            limit_check(cli, expr, at, candidate.as_deref(), *eps, *delta, *samples, *theta)
        }
        Command::Compare { x, y } => compare(cli, x, y),
        Command::Integrate { expr, from, to, theta, tol, depth, grid, certified, gap_below } => {
            integrate(cli, expr, from, to, *theta, *tol, *depth, *grid, *certified, gap_below.as_deref())
        }
        Command::FtcCheck {
            expr,
            from,
            to,
            theta,
            part,
            tol,
            at,
            h,
            samples,
            depth,
            grid,
            certified,
        } => ftc_check(
            cli,
            expr,
            from,
            to,
            *theta,
            *part,
            *tol,
            at.as_deref(),
            *h,
            *samples,
            *depth,
            *grid,
            *certified,
        ),
    }
}

fn eval(cli: &Cli, expr: &str, at: &str) -> Result<i32, Error> {
    let f = DualFunction::parse(expr)?;
    let x = parse_dual(at)?;
    let value = f.eval(x)?;

    #[derive(Serialize)]
    struct Out<'a> {
        command: &'a str,
        expr: &'a str,
        at: DualOut,
        value: DualOut,
    }
    let out = Out { command: "eval", expr, at: x.into(), value: value.into() };
    emit(cli.json, &out, &value.to_string());
    Ok(0)
}

#[derive(Serialize)]
struct DerivativeOut<'a> {
    command: &'a str,
    expr: &'a str,
    at: DualOut,
    method: String,
    step: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<u64>,
    differentiable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    derivative: Option<DualOut>,
    residuals: [f64; 2],
    tolerance: f64,
}

fn derivative_out<'a>(
    command: &'a str,
    expr: &'a str,
    at: DualReal,
    report: &DerivativeReport,
) -> DerivativeOut<'a> {
    DerivativeOut {
        command,
        expr,
        at: at.into(),
        method: report.method.to_string(),
        step: report.step,
        theta: report.theta.map(|t| match t {
            OrderKind::Type1 => 1,
            OrderKind::Type2 => 2,
        }),
        differentiable: report.differentiable,
        derivative: report.derivative.map(DualOut::from),
        residuals: [report.cr_residuals.0, report.cr_residuals.1],
        tolerance: report.tolerance,
    }
}

fn derivative_text(report: &DerivativeReport) -> String {
    match report.derivative {
        Some(d) => format!("{d} ({})", report.method),
        None => format!(
            "not differentiable: residuals {:.3e} / {:.3e} exceed {:.3e}",
            report.cr_residuals.0, report.cr_residuals.1, report.tolerance
        ),
    }
}

fn diff(
    cli: &Cli,
    expr: &str,
    at: &str,
    theta: Option<u64>,
    step: f64,
    finite_difference: bool,
) -> Result<i32, Error> {
    let f = DualFunction::parse(expr)?;
    let c = parse_dual(at)?;
    let report = if finite_difference {
        finite_difference_derivative_at(&f, c, step)?
    } else {
        match theta {
            Some(t) => type_theta_derivative_at(&f, c, parse_theta(t), step)?,
            None => derivative_at(&f, c, step)?,
        }
    };
    let out = derivative_out("diff", expr, c, &report);
    emit(cli.json, &out, &derivative_text(&report));
    Ok(if report.differentiable { 0 } else { 1 })
}

fn check_cr(cli: &Cli, expr: &str, at: &str, step: f64) -> Result<i32, Error> {
    let f = DualFunction::parse(expr)?;
    let c = parse_dual(at)?;
    let report = finite_difference_derivative_at(&f, c, step)?;
    let out = derivative_out("check-cr", expr, c, &report);
    let text = if report.differentiable {
        format!(
            "satisfied: residuals {:.3e} / {:.3e} within {:.3e}",
            report.cr_residuals.0, report.cr_residuals.1, report.tolerance
        )
    } else {
        format!(
            "violated: residuals {:.3e} / {:.3e} exceed {:.3e}",
            report.cr_residuals.0, report.cr_residuals.1, report.tolerance
        )
    };
    emit(cli.json, &out, &text);
    Ok(if report.differentiable { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn limit_check(
    cli: &Cli,
    expr: &str,
    at: &str,
    candidate: Option<&str>,
    eps: f64,
    delta: f64,
    samples: usize,
    theta: Option<u64>,
) -> Result<i32, Error> {
    let f = DualFunction::parse(expr)?;
    let c = parse_dual(at)?;
    let candidate = match candidate {
        Some(src) => parse_dual(src)?,
        None => derivative_at(&f, c, 1e-5)?.derivative.ok_or(Error::PreconditionFailed {
            message: "no derivative candidate: the function fails the component equations".into(),
        })?,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let check = verify_limit_definition(
        &f,
        c,
        candidate,
        eps,
        delta,
        samples,
        theta.map(parse_theta),
        &mut rng,
    )?;

    #[derive(Serialize)]
    struct Out<'a> {
        command: &'a str,
        expr: &'a str,
        at: DualOut,
        candidate: DualOut,
        eps: f64,
        delta: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        theta: Option<u64>,
        seed: u64,
        pass: bool,
        worst_ratio: f64,
        samples: usize,
        skipped: usize,
    }
    let out = Out {
        command: "limit-check",
        expr,
        at: c.into(),
        candidate: candidate.into(),
        eps,
        delta,
        theta,
        seed: cli.seed,
        pass: check.pass,
        worst_ratio: check.worst_ratio,
        samples: check.samples,
        skipped: check.skipped,
    };
    let text = format!(
        "{}: worst ratio {:.4} over {} samples (candidate {candidate})",
        if check.pass { "pass" } else { "fail" },
        check.worst_ratio,
        check.samples,
    );
    emit(cli.json, &out, &text);
    Ok(if check.pass { 0 } else { 1 })
}

fn compare(cli: &Cli, x: &str, y: &str) -> Result<i32, Error> {
    let a = parse_dual(x)?;
    let b = parse_dual(y)?;
    let relation = Relation::between(a, b);

    #[derive(Serialize)]
    struct Out<'a> {
        command: &'a str,
        x: DualOut,
        y: DualOut,
        greater1: bool,
        less1: bool,
        greater2: bool,
        less2: bool,
        equal: bool,
        rendered: String,
    }
    let out = Out {
        command: "compare",
        x: a.into(),
        y: b.into(),
        greater1: relation.greater1,
        less1: relation.less1,
        greater2: relation.greater2,
        less2: relation.less2,
        equal: relation.equal,
        rendered: relation.to_string(),
    };
    emit(cli.json, &out, &relation.to_string());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn integrate(
    cli: &Cli,
    expr: &str,
    from: &str,
    to: &str,
    theta: u64,
    tol: f64,
    depth: usize,
    grid: usize,
    certified: bool,
    gap_below: Option<&str>,
) -> Result<i32, Error> {
    let f = DualFunction::parse(expr)?;
    let interval = parse_interval(from, to, theta)?;
    let opts = options(tol, depth, grid, certified);
    let estimate = estimate_integral(&f, &interval, &opts)?;
    let witnessed = match gap_below {
        Some(src) => {
            let eps = parse_dual(src)?;
            Some(check_integrability(&f, &interval, eps, &opts)?.integrable)
        }
        None => None,
    };

    #[derive(Serialize)]
    struct Out<'a> {
        command: &'a str,
        expr: &'a str,
        from: DualOut,
        to: DualOut,
        theta: u64,
        tol: f64,
        extrema: String,
        value: DualOut,
        lower: DualOut,
        upper: DualOut,
        gap_norm: f64,
        depth: usize,
        cells: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        gap_below: Option<bool>,
    }
    let out = Out {
        command: "integrate",
        expr,
        from: interval.lower().into(),
        to: interval.upper().into(),
        theta,
        tol,
        extrema: match opts.extrema {
            ExtremaMethod::Certified => "certified".to_string(),
            ExtremaMethod::Lattice { grid } => format!("lattice {grid}"),
        },
        value: estimate.value().into(),
        lower: estimate.lower.into(),
        upper: estimate.upper.into(),
        gap_norm: estimate.gap_norm,
        depth: estimate.depth,
        cells: estimate.cells,
        gap_below: witnessed,
    };
    let mut text = format!(
        "{} \u{00b1} {:.3e} (depth {}, {} cells)",
        estimate.value(),
        estimate.gap_norm,
        estimate.depth,
        estimate.cells
    );
    if let Some(found) = witnessed {
        text.push_str(if found {
            "\ngap witness: found"
        } else {
            "\ngap witness: not found within the depth limit"
        });
    }
    emit(cli.json, &out, &text);
    Ok(match witnessed {
        Some(false) => 1,
        _ => 0,
    })
}

#[allow(clippy::too_many_arguments)]
fn ftc_check(
    cli: &Cli,
    expr: &str,
    from: &str,
    to: &str,
    theta: u64,
    part: u64,
    tol: Option<f64>,
    at: Option<&str>,
    h: f64,
    samples: usize,
    depth: usize,
    grid: usize,
    certified: bool,
) -> Result<i32, Error> {
    let f = DualFunction::parse(expr)?;
    let interval = parse_interval(from, to, theta)?;
    if part == 2 {
        let tol = tol.unwrap_or(1e-3);
        let opts = options(tol, depth, grid, certified);
        let report = verify_ftc_part2(&f, &interval, tol, &opts)?;

        #[derive(Serialize)]
        struct Out<'a> {
            command: &'a str,
            expr: &'a str,
            from: DualOut,
            to: DualOut,
            theta: u64,
            part: u64,
            tol: f64,
            pass: bool,
            integral_of_derivative: DualOut,
            endpoint_difference: DualOut,
            error: f64,
        }
        let out = Out {
            command: "ftc-check",
            expr,
            from: interval.lower().into(),
            to: interval.upper().into(),
            theta,
            part,
            tol,
            pass: report.pass,
            integral_of_derivative: report.integral_of_derivative.into(),
            endpoint_difference: report.endpoint_difference.into(),
            error: report.error,
        };
        let text = format!(
            "{}: |integral of derivative - endpoint difference| = {:.3e} (tolerance {:.3e})",
            if report.pass { "pass" } else { "fail" },
            report.error,
            report.tolerance
        );
        emit(cli.json, &out, &text);
        Ok(if report.pass { 0 } else { 1 })
    } else {
        let tol = tol.unwrap_or(5e-2);
        let opts = options(tol, depth, grid, certified);
        let c = match at {
            Some(src) => parse_dual(src)?,
            None => interval.lower().midpoint(interval.upper()),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let report = verify_ftc_part1(&f, &interval, c, h, samples, tol, &opts, &mut rng)?;

        #[derive(Serialize)]
        struct Out<'a> {
            command: &'a str,
            expr: &'a str,
            from: DualOut,
            to: DualOut,
            theta: u64,
            part: u64,
            tol: f64,
            at: DualOut,
            h: f64,
            seed: u64,
            pass: bool,
            worst_error: f64,
            quotients: usize,
            skipped: usize,
        }
        let out = Out {
            command: "ftc-check",
            expr,
            from: interval.lower().into(),
            to: interval.upper().into(),
            theta,
            part,
            tol,
            at: c.into(),
            h,
            seed: cli.seed,
            pass: report.pass,
            worst_error: report.worst_error,
            quotients: report.quotients,
            skipped: report.skipped,
        };
        let text = format!(
            "{}: worst quotient error {:.3e} over {} increments (tolerance {:.3e})",
            if report.pass { "pass" } else { "fail" },
            report.worst_error,
            report.quotients,
            report.tolerance
        );
        emit(cli.json, &out, &text);
        Ok(if report.pass { 0 } else { 1 })
    }
}
