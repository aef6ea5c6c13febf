//! `ellfgl`: emit series, run the exact identity checks, and run numeric
//! addition checks.
//!
//! Exit codes: 0 success, 1 identity or residual failure, 2 usage error,
//! 3 numeric domain, convergence or radius error.

mod render;

use std::process::ExitCode;

use clap::builder::RangedU64ValueParser;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use ellfgl_core::elliptic::{build_log_g_sn, fgl_from_log};
use ellfgl_core::numeric::{addition_residual, MIN_TOLERANCE};
use ellfgl_core::verify::{
    Fault, VerifyConfig, VerifyContext, CHECK_NAMES, DEFAULT_BI_ORDER, DEFAULT_UNI_ORDER,
};
use ellfgl_core::{
    AdditionLawBundle, CanonicalSeries, ParamPoint, Params, SeriesConfig, UniSeries,
};
use rayon::prelude::*;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

/// Environment variable capping the number of worker threads for `verify`.
const THREADS_ENV: &str = "ELLFGL_THREADS";

#[derive(Parser)]
#[command(
    name = "ellfgl",
    version,
    about = "Exact series for the Buchstaber formal group law and the elliptic addition law"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a univariate series.
    Series {
        target: SeriesTarget,
        #[arg(long, default_value_t = DEFAULT_UNI_ORDER, value_parser = RangedU64ValueParser::<usize>::new().range(1..=64))]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Print a formal group law in x, y.
    Fgl {
        target: FglTarget,
        #[arg(long, default_value_t = DEFAULT_BI_ORDER, value_parser = RangedU64ValueParser::<usize>::new().range(1..=32))]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Run the exact identity checks over Q[p1, p2, p3, p4].
    Verify {
        /// Order for identities in one variable.
        #[arg(long, default_value_t = DEFAULT_UNI_ORDER, value_parser = RangedU64ValueParser::<usize>::new().range(2..=40))]
        order: usize,
        /// Total degree for identities in x, y.
        #[arg(long, default_value_t = DEFAULT_BI_ORDER, value_parser = RangedU64ValueParser::<usize>::new().range(1..=24))]
        bi_order: usize,
        /// Run only the named check (repeatable).
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
        only: Vec<String>,
        /// Corrupt B before checking, to exercise the failure path.
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check I(x) + I(y) = I(G(x, y)) numerically, I(x) = int_0^x dt / R(t).
    Numeric(NumericArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesTarget {
    #[value(name = "R")]
    R,
    #[value(name = "B")]
    B,
    #[value(name = "A")]
    A,
    Mu,
    Nu,
    #[value(name = "logF")]
    LogF,
    #[value(name = "expF")]
    ExpF,
    #[value(name = "logG")]
    LogG,
    #[value(name = "SN")]
    Sn,
}

#[derive(Clone, Copy, ValueEnum)]
enum FglTarget {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "G-theorem")]
    GTheorem,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    #[value(name = "b2-sign")]
    B2Sign,
}

#[derive(Args)]
#[command(group(ArgGroup::new("specialization").args(["jacobi", "jacobi_fkh", "ochanine"])))]
struct SpecArgs {
    /// p = (0, -(1+k^2), 0, k^2): R^2 = (1 - t^2)(1 - k^2 t^2), SN = sn.
    #[arg(long)]
    jacobi: bool,
    /// p = (0, 2(1+k^2), 0, (1-k^2)^2): B^2 = (1 - x^2)(1 - k^2 x^2), expF = sn.
    #[arg(long)]
    jacobi_fkh: bool,
    /// p = (0, delta, 0, eps).
    #[arg(long)]
    ochanine: bool,
}

impl SpecArgs {
    fn params(&self) -> Params {
        if self.jacobi {
            Params::euler()
        } else if self.jacobi_fkh {
            Params::jacobi_hoehn()
        } else if self.ochanine {
            Params::ochanine()
        } else {
            Params::generic()
        }
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("point").args(["p", "jacobi"]).required(true)))]
struct NumericArgs {
    /// Parameter values p1 p2 p3 p4.
    #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["P1", "P2", "P3", "P4"])]
    p: Option<Vec<f64>>,
    /// Modulus k: p = (0, -(1+k^2), 0, k^2).
    #[arg(long, value_name = "K", allow_negative_numbers = true)]
    jacobi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, allow_negative_numbers = true)]
    y: f64,
    /// Residual tolerance (at least 1e-13).
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tolerance)]
    tol: f64,
    /// Series order for G [default: 40 with --jacobi, else 16].
    #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(1..=200))]
    order: Option<usize>,
    /// Largest |x|, |y| at which the truncated G is evaluated
    /// [default: 0.5 with --jacobi, else 0.05].
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= MIN_TOLERANCE {
        Ok(v)
    } else {
        Err(format!(
            "tolerance must be a finite number >= {MIN_TOLERANCE:e}"
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Series {
            target,
            order,
            format,
            spec,
        } => cmd_series(target, order, format, &spec.params()),
        Command::Fgl {
            target,
            order,
            format,
            spec,
        } => cmd_fgl(target, order, format, &spec.params()),
        Command::Verify {
            order,
            bi_order,
            only,
            inject_fault,
            format,
        } => {
            let config = VerifyConfig {
                uni_order: order,
                bi_order,
                fault: inject_fault.map(|FaultArg::B2Sign| Fault::FlipB2Sign),
            };
            cmd_verify(config, only, format)
        }
        Command::Numeric(args) => cmd_numeric(&args),
    }
}

fn internal(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_FAILURE)
}

fn cmd_series(target: SeriesTarget, order: usize, format: Format, params: &Params) -> ExitCode {
    let series: UniSeries = match target {
        SeriesTarget::LogG | SeriesTarget::Sn => match build_log_g_sn(&params.quartic(order)) {
            Ok((log_g, sn)) => match target {
                SeriesTarget::LogG => log_g,
                _ => sn,
            },
            Err(e) => return internal(e),
        },
        _ => {
            let cs = match CanonicalSeries::build(params, order) {
                Ok(cs) => cs,
                Err(e) => return internal(e),
            };
            match target {
                SeriesTarget::R => cs.r,
                SeriesTarget::B => cs.b,
                SeriesTarget::A => cs.a,
                SeriesTarget::Mu => cs.mu,
                SeriesTarget::Nu => cs.nu,
                SeriesTarget::LogF => cs.log_f,
                SeriesTarget::ExpF => cs.exp_f,
                SeriesTarget::LogG | SeriesTarget::Sn => unreachable!(),
            }
        }
    };
    match format {
        Format::Json => println!("{}", render::json(&ellfgl_core::json::uni_to_json(&series))),
        Format::Text => print!("{}", render::uni_text(&series)),
    }
    ExitCode::SUCCESS
}

fn cmd_fgl(target: FglTarget, order: usize, format: Format, params: &Params) -> ExitCode {
    let law = match target {
        FglTarget::F => CanonicalSeries::build(params, order + 1).and_then(|cs| cs.fgl()),
        FglTarget::G => build_log_g_sn(&params.quartic(order))
            .and_then(|(log, sn)| fgl_from_log(&log, &sn, order)),
        FglTarget::GTheorem => AdditionLawBundle::build(params, order).map(|b| b.g_via_theorem),
    };
    let law = match law.and_then(|l| l.truncate(order)) {
        Ok(l) => l,
        Err(e) => return internal(e),
    };
    match format {
        Format::Json => println!("{}", render::json(&ellfgl_core::json::bi_to_json(&law))),
        Format::Text => print!("{}", render::bi_text(&law)),
    }
    ExitCode::SUCCESS
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn cmd_verify(config: VerifyConfig, only: Vec<String>, format: Format) -> ExitCode {
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut names: Vec<&str> = if only.is_empty() {
        CHECK_NAMES.to_vec()
    } else {
        CHECK_NAMES
            .iter()
            .copied()
            .filter(|n| only.iter().any(|o| o == n))
            .collect()
    };
    names.sort_unstable();
    let ctx = match VerifyContext::build(config) {
        Ok(ctx) => ctx,
        Err(e) => return internal(e),
    };
    let reports: Vec<_> = pool.install(|| {
        names
            .par_iter()
            .map(|n| ctx.run(n).expect("registered check"))
            .collect()
    });
    let passed = reports.iter().all(|r| r.passed);
    match format {
        Format::Json => println!(
            "{}",
            render::json(&serde_json::json!({ "passed": passed, "checks": reports }))
        ),
        Format::Text => {
            for r in &reports {
                println!("{}", render::report_line(r));
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            println!(
                "{} of {} checks passed",
                reports.len() - failed,
                reports.len()
            );
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn cmd_numeric(args: &NumericArgs) -> ExitCode {
    let (point, jacobi) = match (&args.p, args.jacobi) {
        (Some(p), _) => (ParamPoint::new(p[0], p[1], p[2], p[3]), false),
        (None, Some(k)) => (ParamPoint::jacobi(k), true),
        (None, None) => unreachable!("clap requires one of --p, --jacobi"),
    };
    let default = if jacobi {
        SeriesConfig::new(40, 0.5)
    } else {
        SeriesConfig::default()
    };
    let cfg = SeriesConfig::new(
        args.order.unwrap_or(default.order),
        args.radius.unwrap_or(default.radius),
    );
    let res = match addition_residual(&point, args.x, args.y, args.tol, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_NUMERIC);
        }
    };
    let passed = res.residual <= args.tol;
    match args.format {
        Format::Json => println!(
            "{}",
            render::json(&serde_json::json!({
                "p": point.as_array(),
                "x": args.x,
                "y": args.y,
                "order": cfg.order,
                "I(x)": res.ix,
                "I(y)": res.iy,
                "G": res.g,
                "I(G)": res.ig,
                "residual": res.residual,
                "tol": args.tol,
                "passed": passed,
            }))
        ),
        Format::Text => {
            println!("I(x)     = {:.17e}", res.ix);
            println!("I(y)     = {:.17e}", res.iy);
            println!("G(x, y)  = {:.17e}", res.g);
            println!("I(G)     = {:.17e}", res.ig);
            println!(
                "residual = {:.3e} ({} tol {:e})",
                res.residual,
                if passed { "<=" } else { ">" },
                args.tol
            );
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}
