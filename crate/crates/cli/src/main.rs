//! `weyr`: spectral analysis, representation checks, rank-one perturbation
//! experiments and randomized verification suites for regular pencils.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "weyr", version, about = "Exact Weyr characteristics of pencils and linear relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum, Weyr tables and Fredholm data of a regular pencil.
    Analyze {
        #[arg(long)]
        pencil: PathBuf,
        /// Extra evaluation points, e.g. `0,1/2+i,inf`.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compares both representations with their resolvent forms.
    ReprCheck {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Applies a rank-one perturbation and compares the two pencils.
    Perturb {
        #[arg(long)]
        pencil: PathBuf,
        /// `u` or `v`.
        #[arg(long = "type")]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        vfunc: String,
        #[arg(long, allow_hyphen_values = true)]
        wfunc: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Runs a randomized verification suite, or `all` of them.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        entry_bound: Option<i64>,
        /// Restricts perturbation suites to one type, `u` or `v`.
        #[arg(long = "type")]
        kind: Option<String>,
        /// Also writes the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Writes a pencil in Weierstrass form, optionally scrambled.
    Gen {
        /// Blocks like `2@1,1@1/2+i,2@inf`.
        #[arg(long, allow_hyphen_values = true)]
        blocks: String,
        /// Scrambles with a seeded unimodular equivalence.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2)]
        entry_bound: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spectral data of a linear relation read from a relation file.
    Relation {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(Output, Format), CliError> {
    Ok(match cli.command {
        Command::Analyze {
            pencil,
            points,
            format,
        } => (commands::analyze(&pencil, points.as_deref())?, format),
        Command::ReprCheck {
            pencil,
            mu,
            lambda,
            format,
        } => (commands::repr_check(&pencil, &mu, &lambda)?, format),
        Command::Perturb {
            pencil,
            kind,
            u,
            w,
            vfunc,
            wfunc,
            points,
            format,
        } => {
            let spec = commands::perturbation_from_flags(&kind, &u, w.as_deref(), &vfunc, wfunc.as_deref())?;
            (commands::perturb(&pencil, spec, points.as_deref())?, format)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            max_dim,
            entry_bound,
            kind,
            out,
            format,
        } => {
            let config = commands::suite_config(trials, seed, max_dim, entry_bound, kind.as_deref())?;
            (commands::verify(&suite, &config, out.as_deref())?, format)
        }
        Command::Gen {
            blocks,
            seed,
            entry_bound,
            out,
        } => (commands::gen(&blocks, seed, entry_bound, &out)?, Format::Json),
        Command::Relation {
            relation,
            points,
            format,
        } => (commands::relation(&relation, points.as_deref())?, format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, format)) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&output.json).expect("json value")
                ),
                Format::Md => print!("{}", output.markdown),
            }
            if output.violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
