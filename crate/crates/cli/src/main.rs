use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crepant::commands::{cmd_eval, cmd_invariants, cmd_potential, cmd_verify, InvariantQuery, Output, Part};
use crepant::config::{expand_suites, EvalPoint, Format, RunConfig};
use crepant::CliError;

/// Exact genus-0 potential of local P(1,2) and its change-of-variable checks.
#[derive(Parser)]
#[command(name = "crepant", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Cap on the curve degree (power of q).
    #[arg(long, global = true)]
    qmax: Option<u32>,
    /// Cap on each z variable and on their total degree.
    #[arg(long, global = true)]
    zorder: Option<u32>,
    /// Cap on u for the extended potential.
    #[arg(long, global = true)]
    uorder: Option<u32>,
    /// Use the extended potential (z2 shifted by u).
    #[arg(long, global = true)]
    extended: bool,
    /// Output format: json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// JSON config file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the truncated potential, section by section.
    Potential,
    /// Print a single invariant.
    Invariants {
        #[arg(long, short)]
        degree: u32,
        #[arg(long)]
        n1: Option<u32>,
        #[arg(long)]
        n2: Option<u32>,
        /// Three comma-separated classes from 1, H, S (degree 0 only).
        #[arg(long)]
        classes: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// degree0, resummation, assembly, bracket, residual, corollary or all.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
    /// Evaluate part of the truncated potential numerically.
    Eval {
        /// Point as k=v pairs, e.g. t1=1,t2=1,z0=1.
        #[arg(long)]
        at: Option<String>,
        /// classical, stacky_degree0, quantum or total.
        #[arg(long, default_value = "total")]
        part: String,
    },
}

fn run(command: Command, common: &Common) -> Result<Output, CliError> {
    let file = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let mut flags = RunConfig {
        qmax: common.qmax,
        zorder: common.zorder,
        uorder: common.uorder,
        extended: common.extended,
        format: common.format.as_deref().map(Format::parse).transpose()?,
        ..Default::default()
    };
    match command {
        Command::Potential => cmd_potential(&file.overlay(flags)),
        Command::Invariants { degree, n1, n2, classes } => {
            let cfg = file.overlay(flags);
            cmd_invariants(&InvariantQuery { degree, n1, n2, classes }, cfg.format())
        }
        Command::Verify { suite } => {
            flags.suites = expand_suites(&suite)?;
            cmd_verify(&file.overlay(flags))
        }
        Command::Eval { at, part } => {
            let part = Part::parse(&part)?;
            flags.eval_point = at.as_deref().map(EvalPoint::parse).transpose()?;
            cmd_eval(&file.overlay(flags), part)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command, &cli.common).and_then(|o| {
        match &cli.common.out {
            Some(p) => std::fs::write(p, &o.text)?,
            None => std::io::stdout().write_all(o.text.as_bytes())?,
        }
        Ok(o.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("crepant: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("crepant: {}", e);
            e.exit_code()
        }
    }
}
