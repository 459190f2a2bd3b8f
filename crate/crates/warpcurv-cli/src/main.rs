//! Verification suites for the warped-metric laboratory, exposed as
//! reproducible commands. Artifacts (JSON or CSV) are byte-identical for
//! a fixed config and seed; the measured runtime goes to stderr so files
//! stay diffable. Exit codes: 0 pass, 1 usage/parameter error,
//! 2 verification failure, 3 numerics failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;
use warpcurv::report::{self, CsvRow, DEFAULT_SEED};
use warpcurv::Error;

#[derive(Parser)]
#[command(
    name = "warpcurv",
    version,
    about = "Curvature verification suites for warped complex-hyperbolic metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the artifact to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the numerical curvature engine against the closed-form
    /// tables over a σ×u grid (n = 3).
    VerifyCurvature {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        alpha: Option<f64>,
        /// Branched-cover degree selecting α with cone angle 2π/d.
        #[arg(long)]
        d: Option<u32>,
        /// Grid resolution per axis.
        #[arg(long, default_value_t = 10)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        abs_tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        conn_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cone-angle table over a range of branching degrees.
    ConeTable {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        d_min: u32,
        #[arg(long, default_value_t = 12)]
        d_max: u32,
        /// Offset above u_α for the numeric cone-angle estimate.
        #[arg(long, default_value_t = 1e-6)]
        offset: f64,
        #[arg(long, default_value_t = 1e-4)]
        estimate_tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        roundtrip_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample random 2-planes against the pinching bounds.
    Bounds {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        d: Option<u32>,
        /// Evaluation radius; defaults to the degeneration radius u_α.
        #[arg(long)]
        u: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integrate the radial profile and check the second-order equation.
    Radial {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 5.0)]
        rmax: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 1e-6)]
        ode_tol: f64,
        /// Emit every stride-th integration step.
        #[arg(long, default_value_t = 100)]
        stride: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Deficit support, decay, and interpolated-metric curvature scan.
    Deficit {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        d: Option<u32>,
        /// Largest η; the suite ladders η = 4, 6, … up to this value.
        #[arg(long, default_value_t = 10.0)]
        eta: f64,
        /// Explicit comma-separated η list (overrides --eta).
        #[arg(long, value_delimiter = ',')]
        etas: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Highest Y₆-derivative order in the C^m sup (≤ 2).
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 1e-13)]
        support_tol: f64,
        /// Random planes per radius for the curvature scan (0 disables).
        #[arg(long, default_value_t = 2000)]
        scan_planes: usize,
        #[arg(long, default_value_t = 24)]
        scan_points: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() {
    warpcurv::exec::configure_thread_cap_from_env();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(1);
        }
    };
    let started = Instant::now();
    let outcome = run(cli.command);
    let code = match outcome {
        Ok(pass) => {
            eprintln!(
                "runtime_ms={} status={}",
                started.elapsed().as_millis(),
                if pass { "pass" } else { "fail" }
            );
            if pass {
                0
            } else {
                2
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Numerics(_) => 3,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::VerifyCurvature {
            n,
            alpha,
            d,
            grid,
            seed,
            rel_tol,
            abs_tol,
            conn_tol,
            out,
        } => {
            let alpha = if alpha.is_none() && d.is_none() {
                0.0
            } else {
                report::resolve_alpha(alpha, d, n)?
            };
            let art = report::verify_curvature(&report::VerifyCurvatureConfig {
                n,
                alpha,
                grid,
                seed,
                rel_tol,
                abs_tol,
                conn_tol,
            })?;
            emit(&art, &out)?;
            Ok(art.pass)
        }
        Command::ConeTable {
            n,
            d_min,
            d_max,
            offset,
            estimate_tol,
            roundtrip_tol,
            out,
        } => {
            let art = report::cone_table(&report::ConeTableConfig {
                n,
                d_min,
                d_max,
                offset,
                estimate_tol,
                roundtrip_tol,
            })?;
            emit(&art, &out)?;
            Ok(art.pass)
        }
        Command::Bounds {
            n,
            alpha,
            d,
            u,
            samples,
            seed,
            slack,
            out,
        } => {
            let alpha = report::resolve_alpha(alpha, d, n)?;
            let u = match u {
                Some(u) => u,
                None => warpcurv::cone::cone_data(alpha, n)?.u_alpha,
            };
            let art = report::bounds(&report::BoundsConfig {
                n,
                alpha,
                u,
                samples,
                seed,
                slack,
            })?;
            emit(&art, &out)?;
            Ok(art.pass)
        }
        Command::Radial {
            n,
            alpha,
            d,
            rmax,
            step,
            ode_tol,
            stride,
            out,
        } => {
            let alpha = report::resolve_alpha(alpha, d, n)?;
            let art = report::radial(&report::RadialConfig {
                n,
                alpha,
                r_max: rmax,
                step,
                ode_tol,
                stride,
            })?;
            emit(&art, &out)?;
            Ok(art.pass)
        }
        Command::Deficit {
            n,
            alpha,
            d,
            eta,
            etas,
            grid,
            order,
            support_tol,
            scan_planes,
            scan_points,
            seed,
            out,
        } => {
            let alpha = report::resolve_alpha(alpha, d, n)?;
            let etas = if etas.is_empty() {
                eta_ladder(eta)?
            } else {
                etas
            };
            let art = report::deficit_suite(&report::DeficitConfig {
                n,
                alpha,
                etas,
                grid,
                order,
                support_tol,
                scan_planes,
                scan_points,
                seed,
            })?;
            emit(&art, &out)?;
            Ok(art.pass)
        }
    }
}

fn eta_ladder(eta_max: f64) -> Result<Vec<f64>, Error> {
    if eta_max < 2.0 {
        return Err(Error::Parameter(format!("eta must be >= 2, got {eta_max}")));
    }
    let mut etas = Vec::new();
    let mut eta = 4.0f64.min(eta_max);
    while eta <= eta_max + 1e-12 {
        etas.push(eta);
        eta += 2.0;
    }
    Ok(etas)
}

fn emit<C: Serialize, R: Serialize + CsvRow>(
    art: &report::Artifact<C, R>,
    out: &OutputArgs,
) -> Result<(), Error> {
    let body = match out.format {
        Format::Json => art.to_json(),
        Format::Csv => art.to_csv(),
    };
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| Error::Parameter(format!("stdout: {e}")))
        }
    }
}
