//! Command-line surface of the contextq toolkit.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! status together with the JSON report text: 0 when every check passes, 1
//! when a check fails, 2 on a usage or input error.

pub mod cli;
pub mod commands;
pub mod io;
pub mod report;
pub mod suite;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

use crate::cli::Cli;

/// What a run produced: exit status plus stdout and stderr text.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if !e.use_stderr() {
                return RunOutput {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                };
            }
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("error: invalid arguments");
            return RunOutput {
                status: 2,
                stdout: String::new(),
                stderr: format!("{first} (see --help)\n"),
            };
        }
    };
    let started = Instant::now();
    let report = commands::execute(&cli.command, &cli.common).and_then(|mut report| {
        if cli.common.timing {
            report.duration_ms = Some(started.elapsed().as_secs_f64() * 1e3);
        }
        let text = report.to_json();
        if let Some(path) = &cli.common.out {
            io::write_text(path, &text)?;
        }
        Ok((report.passed(), text))
    });
    match report {
        Ok((passed, text)) => RunOutput {
            status: if passed { 0 } else { 1 },
            stdout: text,
            stderr: String::new(),
        },
        Err(e) => RunOutput {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", one_line(&e)),
        },
    }
}

/// The error chain joined onto a single line.
fn one_line(e: &anyhow::Error) -> String {
    e.chain()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(": ")
}
