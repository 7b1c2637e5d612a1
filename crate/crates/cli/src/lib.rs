//! Command-line front end for `asymcode`.
//!
//! Exit status: 0 when the command succeeded and every checked property
//! holds, 1 when a checked property is false, 2 on usage or input errors.

mod args;
pub mod codefile;
mod commands;
pub mod report;

use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use codefile::{parse_code_file, write_code_file};
pub use report::ReportDocument;

/// Environment variable holding the default enumeration cap.
pub const CAP_ENV: &str = "ASYMCODE_ENUM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let echo = argv.get(1..).unwrap_or_default();
    match commands::execute(&cli, echo) {
        Ok(outcome) => match outcome.emit(&cli, out) {
            Ok(()) => outcome.exit,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
