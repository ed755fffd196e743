//! Command-line surface: single evaluations, identity verification,
//! convergence sweeps, and constant-recovery reports as CSV or JSON.
//!
//! Exit codes: 0 success, 1 usage or precondition violation, 2 numerical
//! failure (conditioning, non-convergence) or unwritable destination.
//! Sweeps parallelise across the parameter list (capped by the
//! GAPASYM_THREADS environment variable); rows always follow input order,
//! so output bytes do not depend on the thread count.

// negated comparisons like !(x > 0.0) are argument guards that must also
// reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::path::PathBuf;

use gapasym::asympt::{
    arc_det_expansion, arc_logderiv_gap, extrapolated_limit_of, hankel_delta_tilde,
    hankel_logderiv_gap, hankel_ratio_expansion, recovery_point, selberg_delta, RecoveryKind,
};
use gapasym::dets::{
    hankel_logdet_laguerre_full, hankel_logdet_trunc, scaling_value_airy, scaling_value_sine,
    selberg_log_a, target_airy, target_sine, toeplitz_logdet_arc, toeplitz_smallarc_check,
    verify_circle_identity, verify_hankel_identity,
};
use gapasym::fredholm::{fredholm_det_airy, fredholm_det_sine, GapParams, NystromConfig};
use gapasym::specfun::constants;

use report::{emit, Cell, OutputFormat, Report};

#[derive(Parser)]
#[command(
    name = "gapasym",
    version,
    about = "Gap determinants, their structured-determinant approximants, and large-gap asymptotics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write the report to this path instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print zeta'(-1) and the derived constants c0 and chi
    Constants,
    /// Sine-kernel gap determinant on (0, 2s)
    SineDet {
        #[arg(long)]
        s: f64,
        /// Quadrature points (default: ceil(10 + 6s) rounded up to even, min 16)
        #[arg(long)]
        m: Option<usize>,
    },
    /// Airy-kernel gap determinant on (-s, cutoff)
    AiryDet {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        m: Option<usize>,
        /// Upper truncation of the semi-infinite interval (default 14)
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Toeplitz log-determinant of the arc symbol
    Toeplitz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Hankel log-determinant of the truncated weight e^(-4xn) on (0, alpha)
    Hankel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Full-weight Hankel determinant, exact closed form
    HankelFull {
        #[arg(long)]
        n: usize,
    },
    /// Selberg integral A_n, exact closed form
    Selberg {
        #[arg(long)]
        n: usize,
    },
    /// Verify a differential identity or degeneration law
    Verify {
        #[arg(long, value_enum)]
        identity: IdentityArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        /// Difference step (default 1e-6 * max(1, alpha))
        #[arg(long)]
        h: Option<f64>,
    },
    /// Convergence sweeps along increasing orders
    Sweep {
        #[arg(long, value_enum)]
        target: SweepTarget,
        /// Gap parameter (limT, limH, intD2)
        #[arg(long)]
        s: Option<f64>,
        /// Arc parameter (asf)
        #[arg(long)]
        alpha: Option<f64>,
        /// Comma-separated increasing orders
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
    },
    /// Residual extraction of the expansion constants
    Residual {
        #[arg(value_enum)]
        kind: ResidualKind,
        /// Comma-separated increasing s values (dyson, tw)
        #[arg(long, value_delimiter = ',')]
        s: Vec<f64>,
        /// Comma-separated increasing orders (selberg-delta, hankel-delta)
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    /// Circle log-derivative identity
    #[value(name = "2det2")]
    TwoDet2,
    /// Hankel log-derivative identity
    #[value(name = "idinterm")]
    Idinterm,
    /// Arc derivative asymptotics (main terms)
    #[value(name = "diff")]
    Diff,
    /// Hankel derivative asymptotics (main terms)
    #[value(name = "di2")]
    Di2,
    /// Small-arc degeneration of the Toeplitz determinant
    #[value(name = "smallarc")]
    Smallarc,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepTarget {
    /// Toeplitz sequence toward the sine-kernel determinant
    #[value(name = "limT")]
    LimT,
    /// Hankel log-ratio sequence toward the Airy-kernel determinant
    #[value(name = "limH")]
    LimH,
    /// Arc-determinant expansion residuals at fixed alpha
    #[value(name = "asf")]
    Asf,
    /// Hankel-ratio expansion residuals at alpha = 1 - s/(2n)^(2/3)
    #[value(name = "intD2")]
    IntD2,
}

#[derive(Clone, Copy, ValueEnum)]
enum ResidualKind {
    #[value(name = "dyson")]
    Dyson,
    #[value(name = "tw")]
    Tw,
    #[value(name = "selberg-delta")]
    SelbergDelta,
    #[value(name = "hankel-delta")]
    HankelDelta,
}

struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 1,
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<gapasym::Error> for CliError {
    fn from(e: gapasym::Error) -> Self {
        CliError {
            code: if e.is_usage() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return 0;
            }
            _ => {
                let rendered = e.render().to_string();
                let line = rendered
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .unwrap_or("invalid arguments");
                eprintln!("gapasym: {line}");
                return 1;
            }
        },
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("gapasym: {}", err.message);
            err.code
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("GAPASYM_THREADS") {
        let n: usize = raw
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                CliError::usage(format!(
                    "GAPASYM_THREADS must be a positive integer, got {raw:?}"
                ))
            })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::numerical(format!("cannot start worker pool: {e}")))
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let pool = thread_pool()?;
    let report = pool.install(|| dispatch(&cli.command))?;
    let format = match cli.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };
    emit(&report, format, cli.output.as_deref()).map_err(CliError::numerical)
}

fn default_h(alpha: f64) -> f64 {
    1e-6 * alpha.max(1.0)
}

fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Constants => {
            let c = constants();
            let mut r = Report::new("constants", vec!["name", "value"]);
            r.push(vec![
                Cell::Text("zeta_prime_minus_one".into()),
                Cell::Real(c.zeta_prime_minus_one),
            ]);
            r.push(vec![Cell::Text("c0".into()), Cell::Real(c.c0)]);
            r.push(vec![Cell::Text("chi_tw".into()), Cell::Real(c.chi_tw)]);
            Ok(r)
        }
        Command::SineDet { s, m } => {
            let mut cfg = NystromConfig::default_for(*s);
            if let Some(m) = m {
                cfg.m = *m;
            }
            let out = fredholm_det_sine(GapParams { s: *s }, cfg)?;
            let mut r = Report::new("sine-det", vec!["s", "m", "log_det", "error_estimate"])
                .param("s", s)
                .param("m", cfg.m);
            r.push(vec![
                Cell::Real(*s),
                Cell::Int(cfg.m as i64),
                Cell::Real(out.log_det),
                Cell::Real(out.error_estimate),
            ]);
            Ok(r)
        }
        Command::AiryDet { s, m, cutoff } => {
            let mut cfg = NystromConfig::default_for(*s);
            if let Some(m) = m {
                cfg.m = *m;
            }
            if let Some(t) = cutoff {
                cfg.airy_cutoff = *t;
            }
            let out = fredholm_det_airy(GapParams { s: *s }, cfg)?;
            let mut r = Report::new(
                "airy-det",
                vec!["s", "m", "cutoff", "log_det", "error_estimate"],
            )
            .param("s", s)
            .param("m", cfg.m)
            .param("cutoff", cfg.airy_cutoff);
            r.push(vec![
                Cell::Real(*s),
                Cell::Int(cfg.m as i64),
                Cell::Real(cfg.airy_cutoff),
                Cell::Real(out.log_det),
                Cell::Real(out.error_estimate),
            ]);
            Ok(r)
        }
        Command::Toeplitz { n, alpha } => {
            let v = toeplitz_logdet_arc(*n, *alpha)?;
            let mut r = Report::new("toeplitz", vec!["n", "alpha", "log_det"])
                .param("n", n)
                .param("alpha", alpha);
            r.push(vec![
                Cell::Int(*n as i64),
                Cell::Real(*alpha),
                Cell::Real(v.ln_abs()),
            ]);
            Ok(r)
        }
        Command::Hankel { n, alpha } => {
            let v = hankel_logdet_trunc(*n, *alpha)?;
            let mut r = Report::new("hankel", vec!["n", "alpha", "log_det"])
                .param("n", n)
                .param("alpha", alpha);
            r.push(vec![
                Cell::Int(*n as i64),
                Cell::Real(*alpha),
                Cell::Real(v.ln_abs()),
            ]);
            Ok(r)
        }
        Command::HankelFull { n } => {
            if *n < 1 {
                return Err(CliError::usage("--n must be >= 1"));
            }
            let v = hankel_logdet_laguerre_full(*n);
            let mut r = Report::new("hankel-full", vec!["n", "log_det"]).param("n", n);
            r.push(vec![Cell::Int(*n as i64), Cell::Real(v.ln_abs())]);
            Ok(r)
        }
        Command::Selberg { n } => {
            if *n < 1 {
                return Err(CliError::usage("--n must be >= 1"));
            }
            let v = selberg_log_a(*n);
            let mut r = Report::new("selberg", vec!["n", "log_value"]).param("n", n);
            r.push(vec![Cell::Int(*n as i64), Cell::Real(v.ln_abs())]);
            Ok(r)
        }
        Command::Verify {
            identity,
            n,
            alpha,
            h,
        } => verify_report(*identity, *n, *alpha, *h),
        Command::Sweep {
            target,
            s,
            alpha,
            orders,
        } => sweep_report(*target, *s, *alpha, orders),
        Command::Residual { kind, s, orders } => residual_report(*kind, s, orders),
    }
}

fn verify_report(
    identity: IdentityArg,
    n: usize,
    alpha: f64,
    h: Option<f64>,
) -> Result<Report, CliError> {
    let h = h.unwrap_or_else(|| default_h(alpha));
    let (name, columns, row): (&str, Vec<&'static str>, Vec<Cell>) = match identity {
        IdentityArg::TwoDet2 => {
            let d = verify_circle_identity(n, alpha, h)?;
            (
                "verify-2det2",
                vec!["n", "alpha", "h", "rel_discrepancy"],
                vec![
                    Cell::Int(n as i64),
                    Cell::Real(alpha),
                    Cell::Real(h),
                    Cell::Real(d),
                ],
            )
        }
        IdentityArg::Idinterm => {
            let d = verify_hankel_identity(n, alpha, h)?;
            (
                "verify-idinterm",
                vec!["n", "alpha", "h", "rel_discrepancy"],
                vec![
                    Cell::Int(n as i64),
                    Cell::Real(alpha),
                    Cell::Real(h),
                    Cell::Real(d),
                ],
            )
        }
        IdentityArg::Diff => {
            let g = arc_logderiv_gap(n, alpha, h)?;
            (
                "verify-diff",
                vec!["n", "alpha", "h", "abs_gap"],
                vec![
                    Cell::Int(n as i64),
                    Cell::Real(alpha),
                    Cell::Real(h),
                    Cell::Real(g),
                ],
            )
        }
        IdentityArg::Di2 => {
            let g = hankel_logderiv_gap(n, alpha, h)?;
            (
                "verify-di2",
                vec!["n", "alpha", "h", "abs_gap"],
                vec![
                    Cell::Int(n as i64),
                    Cell::Real(alpha),
                    Cell::Real(h),
                    Cell::Real(g),
                ],
            )
        }
        IdentityArg::Smallarc => {
            let d = toeplitz_smallarc_check(n, alpha)?;
            (
                "verify-smallarc",
                vec!["n", "alpha", "deviation"],
                vec![Cell::Int(n as i64), Cell::Real(alpha), Cell::Real(d)],
            )
        }
    };
    let mut r = Report::new(name, columns)
        .param("n", n)
        .param("alpha", alpha);
    r.push(row);
    Ok(r)
}

fn sweep_report(
    target: SweepTarget,
    s: Option<f64>,
    alpha: Option<f64>,
    orders: &[usize],
) -> Result<Report, CliError> {
    if orders.is_empty() {
        return Err(CliError::usage("--orders must not be empty"));
    }
    for w in orders.windows(2) {
        if w[1] <= w[0] {
            return Err(CliError::usage("--orders must be strictly increasing"));
        }
    }
    let need_s = || s.ok_or_else(|| CliError::usage("this sweep target requires --s"));
    match target {
        SweepTarget::LimT => {
            let s = need_s()?;
            let tgt = target_sine(s)?;
            let values: Vec<f64> = orders
                .par_iter()
                .map(|&n| scaling_value_sine(s, n).map_err(CliError::from))
                .collect::<Result<_, _>>()?;
            let mut r = Report::new("sweep-limT", vec!["n", "value", "target", "abs_error"])
                .param("s", s);
            for (&n, &v) in orders.iter().zip(&values) {
                r.push(vec![
                    Cell::Int(n as i64),
                    Cell::Real(v),
                    Cell::Real(tgt),
                    Cell::Real((v - tgt).abs()),
                ]);
            }
            Ok(r)
        }
        SweepTarget::LimH => {
            let s = need_s()?;
            let tgt = target_airy(s)?;
            let values: Vec<f64> = orders
                .par_iter()
                .map(|&n| scaling_value_airy(s, n).map_err(CliError::from))
                .collect::<Result<_, _>>()?;
            let mut r = Report::new("sweep-limH", vec!["n", "value", "target", "abs_error"])
                .param("s", s);
            for (&n, &v) in orders.iter().zip(&values) {
                r.push(vec![
                    Cell::Int(n as i64),
                    Cell::Real(v),
                    Cell::Real(tgt),
                    Cell::Real((v - tgt).abs()),
                ]);
            }
            Ok(r)
        }
        SweepTarget::Asf => {
            let alpha =
                alpha.ok_or_else(|| CliError::usage("sweep --target asf requires --alpha"))?;
            let rows: Vec<(f64, f64)> = orders
                .par_iter()
                .map(|&n| -> Result<(f64, f64), CliError> {
                    let formula = arc_det_expansion(n, alpha)?.total;
                    let ld = toeplitz_logdet_arc(n, alpha)?.ln_abs();
                    Ok((formula, ld))
                })
                .collect::<Result<_, _>>()?;
            let mut r = Report::new(
                "sweep-asf",
                vec!["n", "formula_total", "log_det", "residual"],
            )
            .param("alpha", alpha);
            for (&n, &(formula, ld)) in orders.iter().zip(&rows) {
                r.push(vec![
                    Cell::Int(n as i64),
                    Cell::Real(formula),
                    Cell::Real(ld),
                    Cell::Real(formula - ld),
                ]);
            }
            Ok(r)
        }
        SweepTarget::IntD2 => {
            let s = need_s()?;
            let rows: Vec<(f64, f64, f64)> = orders
                .par_iter()
                .map(|&n| -> Result<(f64, f64, f64), CliError> {
                    let alpha_n = 1.0 - s / (2.0 * n as f64).powf(2.0 / 3.0);
                    if !(alpha_n > 0.0) {
                        return Err(CliError::usage(format!(
                            "order {n} too small for s = {s}: alpha would be {alpha_n}"
                        )));
                    }
                    let formula = hankel_ratio_expansion(n, alpha_n)?.total;
                    let ratio = scaling_value_airy(s, n)?;
                    Ok((alpha_n, formula, ratio))
                })
                .collect::<Result<_, _>>()?;
            let mut r = Report::new(
                "sweep-intD2",
                vec!["n", "alpha", "formula_total", "log_ratio", "residual"],
            )
            .param("s", s);
            for (&n, &(alpha_n, formula, ratio)) in orders.iter().zip(&rows) {
                r.push(vec![
                    Cell::Int(n as i64),
                    Cell::Real(alpha_n),
                    Cell::Real(formula),
                    Cell::Real(ratio),
                    Cell::Real(formula - ratio),
                ]);
            }
            Ok(r)
        }
    }
}

fn residual_report(kind: ResidualKind, s: &[f64], orders: &[usize]) -> Result<Report, CliError> {
    match kind {
        ResidualKind::Dyson | ResidualKind::Tw => {
            if s.is_empty() {
                return Err(CliError::usage("residual dyson|tw requires --s"));
            }
            for w in s.windows(2) {
                if w[1] <= w[0] {
                    return Err(CliError::usage("--s must be strictly increasing"));
                }
            }
            if s[0] < 2.0 {
                return Err(CliError::usage("--s values must all be >= 2"));
            }
            let rk = match kind {
                ResidualKind::Dyson => RecoveryKind::Dyson,
                _ => RecoveryKind::TracyWidom,
            };
            let pts: Vec<(f64, f64)> = s
                .par_iter()
                .map(|&sv| recovery_point(rk, sv).map_err(CliError::from))
                .collect::<Result<_, _>>()?;
            let residuals: Vec<f64> = pts.iter().map(|p| p.1).collect();
            let limit = extrapolated_limit_of(s, &residuals);
            let name = match kind {
                ResidualKind::Dyson => "residual-dyson",
                _ => "residual-tw",
            };
            let mut r = Report::new(
                name,
                vec!["s", "log_det", "residual", "extrapolated_limit"],
            )
            .param("s_values", format_list(s));
            for (&sv, &(ln_p, res)) in s.iter().zip(&pts) {
                r.push(vec![
                    Cell::Real(sv),
                    Cell::Real(ln_p),
                    Cell::Real(res),
                    Cell::Real(limit),
                ]);
            }
            Ok(r)
        }
        ResidualKind::SelbergDelta | ResidualKind::HankelDelta => {
            if orders.is_empty() {
                return Err(CliError::usage(
                    "residual selberg-delta|hankel-delta requires --orders",
                ));
            }
            for w in orders.windows(2) {
                if w[1] <= w[0] {
                    return Err(CliError::usage("--orders must be strictly increasing"));
                }
            }
            if orders[0] < 2 {
                return Err(CliError::usage("--orders must all be >= 2"));
            }
            let f: fn(usize) -> f64 = match kind {
                ResidualKind::SelbergDelta => selberg_delta,
                _ => hankel_delta_tilde,
            };
            let residuals: Vec<f64> = orders.par_iter().map(|&n| f(n)).collect();
            let params: Vec<f64> = orders.iter().map(|&n| n as f64).collect();
            let limit = extrapolated_limit_of(&params, &residuals);
            let name = match kind {
                ResidualKind::SelbergDelta => "residual-selberg-delta",
                _ => "residual-hankel-delta",
            };
            let mut r = Report::new(name, vec!["n", "residual", "extrapolated_limit"])
                .param("orders", format_list(orders));
            for (&n, &res) in orders.iter().zip(&residuals) {
                r.push(vec![
                    Cell::Int(n as i64),
                    Cell::Real(res),
                    Cell::Real(limit),
                ]);
            }
            Ok(r)
        }
    }
}

fn format_list<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
