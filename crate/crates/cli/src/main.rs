//! `sp4`: command-line front end. Every subcommand prints one JSON report on
//! standard output. Exit status is 2 for malformed input, 1 for a failed
//! check and 0 otherwise.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = commands::Cli::parse();
    let (report, status) = commands::run(cli);
    let text = serde_json::to_string_pretty(&report).expect("reports are plain JSON values");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(status)
}
