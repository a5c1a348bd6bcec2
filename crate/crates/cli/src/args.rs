use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mpres", version, about = "Decide which distance-preserving classes a function belongs to")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    #[value(name = "M")]
    M,
    #[value(name = "U")]
    U,
    #[value(name = "MU")]
    Mu,
    #[value(name = "UM")]
    Um,
}

impl Class {
    pub fn label(self) -> &'static str {
        match self {
            Class::M => "M",
            Class::U => "U",
            Class::Mu => "MU",
            Class::Um => "UM",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a function file and print the full report.
    Classify {
        file: PathBuf,
        /// Record wall-clock time in the report (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Check a distance matrix against the metric (or ultrametric) axioms.
    CheckMatrix {
        csv: PathBuf,
        #[arg(long)]
        ultra: bool,
    },
    /// Apply a function entrywise to a distance matrix.
    Transform {
        file: PathBuf,
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Look for a witness of non-membership in one class.
    Witness {
        file: PathBuf,
        #[arg(long, value_enum)]
        class: Class,
        /// Seed of the random triangle search (M only).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random triangles to try (M only).
        #[arg(long, default_value_t = mpres_core::classifier::M_SEARCH_BUDGET)]
        budget: usize,
    },
    /// Transform random spaces and check them against the proven verdicts.
    Fuzz {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        spaces: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}
