//! Command-line frontend for `mpres-core`.
//!
//! Exit codes: 0 success, 1 violation or witness found, 2 bad input.

pub mod args;
pub mod commands;
pub mod report;

pub use args::{Cli, Command, Format};
pub use commands::{FuzzReport, InputError, MatrixCheck, Outcome, TransformSummary, WitnessReport, WitnessStatus};
pub use report::{ClassWitness, ReportDocument};

pub fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let format = cli.format;
    match &cli.command {
        Command::Classify { file, timing } => commands::classify_cmd(file, *timing, format),
        Command::CheckMatrix { csv, ultra } => commands::check_matrix_cmd(csv, *ultra, format),
        Command::Transform { file, csv, out } => commands::transform_cmd(file, csv, out, format),
        Command::Witness {
            file,
            class,
            seed,
            budget,
        } => commands::witness_cmd(file, *class, *seed, *budget, format),
        Command::Fuzz { file, spaces, seed } => commands::fuzz_cmd(file, *spaces, *seed, format),
    }
}
