//! `specht`: root systems, subsystems and generalized Specht modules from the shell.

mod commands;
mod error;
mod output;
mod par;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use specht_core::exact::Field;
use specht_core::specht::Mode;

use crate::error::CliError;
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "specht", version, about = "Generalized Specht modules for finite Weyl groups")]
pub struct Cli {
    /// Coefficient field: `q` for the rationals or `p<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Tabloid flavour for pair commands.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Subsystem)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for independent pairs and checks.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Subsystem,
    Coset,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Subsystem => Mode::Subsystem,
            ModeArg::Coset => Mode::Coset,
        }
    }
}

/// A single pair on the command line, or a file of `J ; J'` lines.
#[derive(clap::Args, Debug)]
pub struct PairArgs {
    /// Cartan label, e.g. `D4`.
    pub label: String,
    /// Row roots, comma separated; `-` for the empty set.
    pub j: Option<String>,
    /// Column roots; fractional generators use `1/k(r1+...+rk)`.
    pub j_prime: Option<String>,
    /// Read pairs from a file instead, one `J ; J'` per line.
    #[arg(long, conflicts_with_all = ["j", "j_prime"])]
    pub pairs: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the roots, positive system and Dynkin diagram.
    Roots { label: String },
    /// List subsystems up to conjugacy.
    Subsystems {
        label: String,
        /// Add duals and Steinberg foldings.
        #[arg(long)]
        extended: bool,
    },
    /// Test the trivial-intersection conditions.
    UsefulCheck(PairArgs),
    /// Test the good-system condition, or search for good partners.
    GoodCheck {
        #[command(flatten)]
        pair: PairArgs,
        /// For every subsystem, find the first good partner.
        #[arg(long)]
        search: bool,
    },
    /// Build the Specht module and report its character.
    Specht(PairArgs),
    /// Character of the quotient of two nested Specht modules.
    Series {
        label: String,
        j: String,
        /// The smaller column set; its module is the larger one.
        smaller: String,
        /// The larger column set, giving the submodule.
        larger: String,
    },
    /// Reproduce the full W(D4) character table from Specht modules.
    VerifyD4 {
        /// Compare against a table file (`label v1 ... v13` per line).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Print the built-in W(D4) character table.
    Table,
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s.trim() {
        "q" | "Q" => Ok(Field::Rational),
        t => {
            let p = t
                .strip_prefix(['p', 'P', 'F'])
                .and_then(|n| n.parse::<u32>().ok())
                .ok_or_else(|| format!("expected `q` or `p<prime>`, got {t:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Reported(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
