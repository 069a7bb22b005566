//! Command-line front end for `rydberg-jc`.
//!
//! Exit codes: 0 success, 1 usage, 2 verification failure, 3 I/O.

pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod run;

pub use config::{parse_config, ParseOutcome, RunConfig, Scenario};
pub use error::CliError;
pub use figures::{FigureId, FigurePreset, PresetKind};

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse_config(argv) {
        Ok(cfg) => cfg,
        Err(ParseOutcome::Clap(e)) => {
            let _ = e.print();
            return if e.exit_code() == 0 { 0 } else { 1 };
        }
        Err(ParseOutcome::Error(e)) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match run::run(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
