use std::path::PathBuf;
use std::time::Instant;

use affprox::scalar::half;
use affprox::{
    best_approximation, gap_constant, lower_envelope, norm_of_difference, upper_envelope,
    verify_solution, AffineFunctional, Instance, Point,
};
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::CliError;
use crate::format::{load_instance, parse_vector, FunctionalSpec, InstanceFile, Rational};
use crate::generate::{generate, GenParams};
use crate::oracle::oracle_distance;
use crate::report::{
    CheckReport, EnvelopeReport, GapReport, GapWitness, OracleReport, SolutionReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "affprox",
    version,
    about = "Exact best approximation of affine functionals through affine maps of polytopes"
)]
pub struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute d, c and an optimal h₀, and verify the result.
    Solve { file: PathBuf },
    /// Compute the gap constant c with a witness pair.
    Gap { file: PathBuf },
    /// Evaluate the lower and upper fiber envelopes at a point of D.
    Envelope {
        file: PathBuf,
        /// Comma-separated rational coordinates, e.g. `1/2,3`.
        #[arg(long, value_name = "POINT", allow_hyphen_values = true)]
        at: String,
    },
    /// Compare ‖f − h∘φ‖ for a candidate h against the lower bound c/2.
    Check {
        file: PathBuf,
        /// Comma-separated coefficients followed by the constant term.
        #[arg(long, num_args = 2, value_names = ["COEFFS", "CONST"], allow_hyphen_values = true)]
        h: Vec<String>,
    },
    /// Print a seeded random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long = "dim-c")]
        dim_c: usize,
        #[arg(long = "dim-d")]
        dim_d: usize,
        #[arg(long)]
        vertices: usize,
    },
    /// Brute-force grid estimate of d (dim_D ≤ 2).
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        depth: u32,
    },
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

pub fn solve(instance: &Instance) -> Result<SolutionReport, CliError> {
    let start = Instant::now();
    let result = best_approximation(instance)?;
    if !verify_solution(
        instance.domain(),
        instance.map(),
        instance.functional(),
        &result,
    ) {
        return Err(CliError::Verification(
            "solution failed independent verification".into(),
        ));
    }
    Ok(SolutionReport::new(&result, start.elapsed()))
}

pub fn gap(instance: &Instance) -> Result<GapReport, CliError> {
    let cert = gap_constant(instance.domain(), instance.map(), instance.functional())?;
    Ok(GapReport {
        c: Rational(cert.c.clone()),
        gap_witness: GapWitness::from(&cert),
    })
}

pub fn envelope(instance: &Instance, y: &Point) -> Result<EnvelopeReport, CliError> {
    let (c, map, f) = (instance.domain(), instance.map(), instance.functional());
    let lower = lower_envelope(c, map, f, y)?;
    let upper = upper_envelope(c, map, f, y)?;
    Ok(EnvelopeReport::new(y, &lower, &upper))
}

pub fn check(instance: &Instance, h: &AffineFunctional) -> Result<CheckReport, CliError> {
    let (c, map, f) = (instance.domain(), instance.map(), instance.functional());
    let norm = norm_of_difference(c, map, f, h)?;
    let bound = half(&gap_constant(c, map, f)?.c);
    Ok(CheckReport {
        h: FunctionalSpec::from(h),
        holds: norm >= bound,
        optimal: norm == bound,
        norm: Rational(norm),
        bound: Rational(bound),
    })
}

pub fn parse_candidate(args: &[String]) -> Result<AffineFunctional, CliError> {
    let [coeffs, constant] = args else {
        return Err(CliError::Parse("--h takes <COEFFS> <CONST>".into()));
    };
    let coeffs = parse_vector(coeffs)?;
    let constant =
        affprox::scalar::parse(constant.trim()).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(AffineFunctional::new(coeffs, constant))
}

/// Runs one command and returns the text to print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let text = match &cli.command {
        Command::Solve { file } => to_json(&solve(&load_instance(file)?)?),
        Command::Gap { file } => to_json(&gap(&load_instance(file)?)?),
        Command::Envelope { file, at } => {
            let instance = load_instance(file)?;
            let y = Point::new(parse_vector(at)?);
            to_json(&envelope(&instance, &y)?)
        }
        Command::Check { file, h } => {
            let instance = load_instance(file)?;
            let h = parse_candidate(h)?;
            to_json(&check(&instance, &h)?)
        }
        Command::Gen {
            seed,
            dim_c,
            dim_d,
            vertices,
        } => generate(GenParams {
            seed: *seed,
            dim_c: *dim_c,
            dim_d: *dim_d,
            vertices: *vertices,
        })?
        .to_json(),
        Command::Oracle { file, depth } => {
            let instance = load_instance(file)?;
            to_json(&OracleReport::new(
                *depth,
                oracle_distance(&instance, *depth)?,
            ))
        }
    };
    if let Some(path) = &cli.output {
        std::fs::write(path, &text)?;
    }
    Ok(text)
}

/// Re-serializes an instance file in canonical form.
pub fn normalize(text: &str) -> Result<String, CliError> {
    Ok(InstanceFile::parse(text)?.to_json())
}
