//! `topogame`: solve, check and report on selection games over finite
//! spaces.
//!
//! Exit status: 0 when every validation passes, 2 when violations are
//! found, 1 on usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "topogame", version, about = "Selection principles and topological games on finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Side {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Subcommand)]
pub enum Command {
    /// List labeled topologies up to a size.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// One representative per homeomorphism class.
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All diagram properties at a point, with certificates.
    Profile {
        #[arg(long)]
        space: String,
        #[arg(long)]
        point: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a named game and optionally save the winner's strategy.
    Solve {
        #[arg(long)]
        space: String,
        #[arg(long)]
        point: usize,
        /// qgame, wgame, wgame-literal, wtilde, dual or csft.
        #[arg(long, default_value = "qgame")]
        game: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide S1, S1* or the sequence form for two families.
    Principle {
        #[arg(long)]
        space: String,
        /// s1, s1star or seq.
        #[arg(long, default_value = "s1")]
        kind: String,
        /// Selector family, e.g. tau:0 or omega:1.
        #[arg(long, default_value = "tau:0")]
        a: String,
        /// Goal family, e.g. cd or gamma:0.
        #[arg(long, default_value = "cd")]
        b: String,
        /// The point, for `seq`.
        #[arg(long, default_value_t = 0)]
        point: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a combinator strategy and check it by exhaustive play.
    Transform {
        /// dual_i, dual_ii, dual_iii, dual_iv, na_oo, q_to_wtilde,
        /// II_transfer, frechet_refuter or pi_base.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        space: String,
        #[arg(long)]
        point: usize,
        /// Input strategy file; defaults to the solver's winner.
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Schedule for frechet_refuter, sets separated by `;`.
        #[arg(long)]
        schedule: Option<String>,
        /// `exhaustive` or `none`.
        #[arg(long, default_value = "exhaustive")]
        verify: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// q-game against its dual on every small space.
    VerifyDuality {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Profiles of every small space checked against the diagram.
    VerifyDiagram {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every combinator on every small instance, plus ordinal prefixes.
    VerifyTransformers {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play against a solved strategy; `--space omega1` plays the ordinal
    /// example.
    Play {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 0)]
        point: usize,
        #[arg(long, default_value = "qgame")]
        game: String,
        #[arg(long, value_enum, default_value = "II")]
        side: Side,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT diagram and JSON tables for a sweep, written into a directory.
    Report {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "report")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    topogame::harness::init_workers();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
