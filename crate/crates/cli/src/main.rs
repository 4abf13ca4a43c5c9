//! `toss`: membership, Condition★, derivation, flow, heart and sampling from the shell.
//!
//! Exit codes: 0 member/pass, 1 reject/fail, 2 input or usage error.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use toss_core::charge::Tsd;
use toss_core::derive::derive_report;
use toss_core::doc::{parse_tsd, TsdDocument};
use toss_core::num::{fmt_q, q};
use toss_core::oracle::condition_star;
use toss_core::quiver_core::weights_from_tag;
use toss_core::region::{check_membership, classify_heart, contraction_flow};
use toss_core::sample::{Axis, Sampler, Spread};

#[derive(Parser)]
#[command(name = "toss", version, about = "Total semi-stability on tame weighted projective lines")]
struct Cli {
    #[command(flatten)]
    out: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    /// Indented JSON
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
    /// Compact JSON (default)
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form membership of a datum
    Check { input: PathBuf },
    /// Condition★ over the mesh
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        periods: u32,
    },
    /// Derive the region from the mesh and compare with the listed system
    Derive {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
    },
    /// Linear path between two members
    Flow {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },
    /// Classify the heart of a datum
    Heart { input: PathBuf },
    /// Seeded random data, one document per line
    Sample {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Put exactly one facet of the listed system to equality
        #[arg(long)]
        on_boundary: bool,
        /// Draw `z` on the real axis instead of the upper half plane
        #[arg(long)]
        real: bool,
    },
}

/// A failure that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

fn read_tsd(path: &PathBuf) -> Result<Tsd, InputError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?
    };
    parse_tsd(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: &Output, value: &T) {
    let text = if out.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    println!("{}", text.expect("reports serialize"));
}

#[derive(Serialize)]
struct FlowStep {
    t: String,
    member: bool,
    datum: TsdDocument,
}

#[derive(Serialize)]
struct FlowReport {
    all_members: bool,
    steps: Vec<FlowStep>,
}

fn run(cli: &Cli) -> Outcome {
    let out = &cli.out;
    match &cli.cmd {
        Cmd::Check { input } => {
            let report = check_membership(&read_tsd(input)?)?;
            emit(out, &report);
            Ok(report.member)
        }
        Cmd::Oracle { input, periods } => {
            let report = condition_star(&read_tsd(input)?, *periods)?;
            emit(out, &report);
            Ok(report.member)
        }
        Cmd::Derive { ty } => {
            let report = derive_report(&weights_from_tag(ty)?)?;
            emit(out, &report);
            Ok(report.equivalent)
        }
        Cmd::Flow { a, b, steps } => {
            let (a, b) = (read_tsd(a)?, read_tsd(b)?);
            let mut rows = Vec::new();
            for i in 0..=*steps {
                let t = q(i as i64, *steps as i64);
                let x = contraction_flow(&a, &b, &t)?;
                rows.push(FlowStep { t: fmt_q(&t), member: check_membership(&x)?.member, datum: TsdDocument::from_tsd(&x) });
            }
            let report = FlowReport { all_members: rows.iter().all(|r| r.member), steps: rows };
            emit(out, &report);
            Ok(report.all_members)
        }
        Cmd::Heart { input } => {
            emit(out, &classify_heart(&read_tsd(input)?)?);
            Ok(true)
        }
        Cmd::Sample { ty, count, seed, on_boundary, real } => {
            let w = weights_from_tag(ty)?;
            let mut s = Sampler::new(&w, *seed);
            let axis = if *real { Axis::Real } else { Axis::Upper };
            for _ in 0..*count {
                let tsd = if *on_boundary {
                    s.boundary(axis)?.ok_or_else(|| InputError(format!("{ty} has no listed inequalities to put on the boundary")))?.tsd
                } else {
                    s.datum(Spread::Wide, axis)?
                };
                emit(out, &TsdDocument::from_tsd(&tsd));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
