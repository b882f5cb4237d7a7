//! Command-line front end.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bessel::{EvalAccuracy, Order};
use crate::error::Error;
use crate::figure::figure_table_with;
use crate::functional::{Evaluator, Family, FunctionalParams, DEFAULT_RADIUS_TOL};
use crate::output::{fmt_num, to_json, Csv};
use crate::verify::{run_verification, GridSpec};
use crate::zeros::{compute_zeros_with, ZeroKind, ZeroScan};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bessel-radii",
    version,
    about = "Radii of alpha-convexity of order beta for normalized Bessel functions"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    /// Maximum number of series terms.
    #[arg(long, global = true, env = "BESSEL_RADII_MAX_TERMS", default_value_t = 200)]
    pub max_terms: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radius of alpha-convexity of order beta (JSON).
    Radius(RadiusArgs),
    /// Curves r -> J(alpha, u(r)) for figure 1, 2 or 3 (CSV).
    Figure(FigureArgs),
    /// Positive zeros of J, J', or the Dini functions (CSV).
    Zeros(ZerosArgs),
    /// Radii over a range of alpha (CSV).
    Sweep(SweepArgs),
    /// Run the verification suite (JSON); exits with 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    /// f, g or h
    #[arg(long)]
    pub family: Family,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    /// Bisection bracket width.
    #[arg(long, env = "BESSEL_RADII_TOL", default_value_t = DEFAULT_RADIUS_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    /// Number of r samples.
    #[arg(long, default_value_t = 180)]
    pub points: usize,
    #[arg(long, env = "BESSEL_RADII_TOL", default_value_t = DEFAULT_RADIUS_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    /// j, jprime, dini-g or dini-h
    #[arg(long)]
    pub kind: ZeroKind,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long)]
    pub count: usize,
    /// Bisection tolerance.
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long)]
    pub beta: f64,
    /// Explicit alpha values; overrides the range.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, env = "BESSEL_RADII_TOL", default_value_t = DEFAULT_RADIUS_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Orders for family f.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub nus_f: Option<Vec<f64>>,
    /// Orders for families g and h.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub nus_gh: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub betas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub interlacing_nus: Option<Vec<f64>>,
    /// Zeros per interlacing chain.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub r_points: Option<usize>,
    /// Angular samples per circle.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub margin: Option<f64>,
    #[arg(long)]
    pub lemma_tuples: Option<usize>,
    #[arg(long, env = "BESSEL_RADII_TOL")]
    pub tol: Option<f64>,
}

impl VerifyArgs {
    fn grid(&self, acc: EvalAccuracy) -> GridSpec {
        let d = GridSpec::default();
        GridSpec {
            nus_f: self.nus_f.clone().unwrap_or(d.nus_f),
            nus_gh: self.nus_gh.clone().unwrap_or(d.nus_gh),
            alphas: self.alphas.clone().unwrap_or(d.alphas),
            betas: self.betas.clone().unwrap_or(d.betas),
            interlacing_nus: self.interlacing_nus.clone().unwrap_or(d.interlacing_nus),
            count: self.count.unwrap_or(d.count),
            r_points: self.r_points.unwrap_or(d.r_points),
            samples: self.samples.unwrap_or(d.samples),
            margin: self.margin.unwrap_or(d.margin),
            lemma_tuples: self.lemma_tuples.unwrap_or(d.lemma_tuples),
            radius_tol: self.tol.unwrap_or(d.radius_tol),
            accuracy: acc,
            ..d
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("failed to serialize output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("failed to write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Compute(
                Error::InvalidOrder { .. }
                | Error::InvalidParameter { .. }
                | Error::OutOfInterval { .. }
                | Error::PreconditionViolated(_)
                | Error::DomainCapExceeded { .. },
            ) => EXIT_USAGE,
            _ => EXIT_VERIFY_FAILED,
        }
    }
}

#[derive(Debug, Serialize)]
struct RadiusRecord {
    family: Family,
    nu: f64,
    alpha: f64,
    beta: f64,
    radius: f64,
    cap: f64,
    residual: f64,
    zero_sum_residual: f64,
    iterations: usize,
    bracket: (f64, f64),
}

/// Runs one command, writing its output to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, CliError> {
    let acc = EvalAccuracy { max_terms: cli.max_terms, ..EvalAccuracy::tight() };
    acc.validate()?;
    match &cli.command {
        Command::Radius(a) => {
            let ev = Evaluator::with_accuracy(a.family, Order::new(a.nu)?, acc)?;
            let r = ev.radius(FunctionalParams::new(a.alpha, a.beta)?, a.tol)?;
            let rec = RadiusRecord {
                family: a.family,
                nu: a.nu,
                alpha: a.alpha,
                beta: a.beta,
                radius: r.radius,
                cap: r.domain_cap_value,
                residual: r.residual,
                zero_sum_residual: r.zero_sum_residual,
                iterations: r.iterations,
                bracket: r.bracket,
            };
            writeln!(out, "{}", to_json(&rec)?)?;
        }
        Command::Figure(a) => {
            let t = figure_table_with(a.id, a.points, acc, a.tol)?;
            out.write_all(t.to_csv().render().as_bytes())?;
        }
        Command::Zeros(a) => {
            let scan = ZeroScan { zero_tol: a.tol, accuracy: acc, ..Default::default() };
            let t = compute_zeros_with(a.kind, Order::new(a.nu)?, a.count, &scan)?;
            let mut csv = Csv::new(["n", "zero"]);
            for (i, z) in t.values().iter().enumerate() {
                csv.push(vec![(i + 1).to_string(), fmt_num(*z)]);
            }
            out.write_all(csv.render().as_bytes())?;
        }
        Command::Sweep(a) => {
            let alphas = if a.alphas.is_empty() { alpha_range(a)? } else { a.alphas.clone() };
            let ev = Evaluator::with_accuracy(a.family, Order::new(a.nu)?, acc)?;
            let mut csv = Csv::new(["alpha", "radius", "residual", "zero_sum_residual", "iterations"]);
            for alpha in alphas {
                let r = ev.radius(FunctionalParams::new(alpha, a.beta)?, a.tol)?;
                csv.push(vec![
                    fmt_num(alpha),
                    fmt_num(r.radius),
                    fmt_num(r.residual),
                    fmt_num(r.zero_sum_residual),
                    r.iterations.to_string(),
                ]);
            }
            out.write_all(csv.render().as_bytes())?;
        }
        Command::Verify(a) => {
            let report = run_verification(&a.grid(acc))?;
            writeln!(out, "{}", to_json(&report)?)?;
            if !report.passed {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn alpha_range(a: &SweepArgs) -> Result<Vec<f64>, Error> {
    if a.steps == 0 {
        return Err(Error::InvalidParameter { name: "steps", value: 0.0, reason: "must be at least 1" });
    }
    if !(a.alpha_max >= a.alpha_min) {
        return Err(Error::InvalidParameter {
            name: "alpha-max",
            value: a.alpha_max,
            reason: "must not be below alpha-min",
        });
    }
    if a.steps == 1 {
        return Ok(vec![a.alpha_min]);
    }
    let h = (a.alpha_max - a.alpha_min) / (a.steps - 1) as f64;
    Ok((0..a.steps).map(|k| a.alpha_min + h * k as f64).collect())
}
