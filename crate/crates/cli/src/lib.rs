//! `rhardy` command-line front end.
//!
//! [`run`] parses an argument list, executes one command and returns the exit
//! code together with what belongs on standard output and standard error.
//! Exit codes: 0 computed and every asserted property holds, 1 a checked
//! property fails, 2 invalid arguments, 3 numerical failure.

pub mod args;
pub mod commands;
pub mod report;
pub mod sweep;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use rhardy_core::HardyError;

use args::{Cli, Command};
use report::{Report, Status};

/// Environment variable overriding the default relative tolerance.
pub const REL_TOL_ENV: &str = "RHARDY_REL_TOL";
/// Environment variable overriding the default absolute tolerance.
pub const ABS_TOL_ENV: &str = "RHARDY_ABS_TOL";

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Errors that stop a command before a report exists.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments; reported with usage text and exit code 2.
    Usage(String),
    /// Numerical failure while resolving inputs; exit code 3.
    Numerical(HardyError),
}

impl From<HardyError> for CliError {
    fn from(e: HardyError) -> Self {
        match e {
            HardyError::NumericalFailure(_) => CliError::Numerical(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// What a command produced: a report plus an optional CSV rendering.
pub struct Rendered {
    pub report: Report,
    pub csv: Option<String>,
}

/// Runs the tool on `argv`, where `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let name = command_name(&cli.command);
    match commands::execute(&cli) {
        Ok(Rendered { report, csv }) => {
            let json = report.to_json();
            match csv {
                // the CSV table goes to stdout; a failing run also gets the JSON diagnostic
                Some(table) => {
                    let stderr = if report.status == Status::NumericalFailure { json + "\n" } else { String::new() };
                    Outcome { code: report.exit_code, stdout: table, stderr }
                }
                None => Outcome { code: report.exit_code, stdout: json + "\n", stderr: String::new() },
            }
        }
        Err(CliError::Usage(msg)) => {
            let mut cmd = Cli::command();
            cmd.build();
            let usage = cmd.find_subcommand_mut(name).map(|c| c.render_usage().to_string()).unwrap_or_default();
            Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n\n{usage}\n\nFor more information, try 'rhardy {name} --help'.\n"),
            }
        }
        Err(CliError::Numerical(e)) => {
            let report = Report::failed(name, commands::bare_parameters(&cli.global), &e);
            Outcome { code: 3, stdout: report.to_json() + "\n", stderr: format!("error: {e}\n") }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Constants(_) => "constants",
        Command::Condition(_) => "condition",
        Command::Verify(_) => "verify",
        Command::Minkowski(_) => "minkowski",
        Command::Hoelder(_) => "hoelder",
        Command::Sweep(_) => "sweep",
    }
}
