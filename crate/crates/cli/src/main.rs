//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.
//! Non-zero exits print a diagnostic to standard error and emit no payload.

mod chart;
mod cli;
mod commands;
mod payload;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Command};
use commands::{CliError, Output};

fn main() {
    let parsed = match Cli::try_parse() {
        Ok(parsed) => parsed,
        Err(err) => match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{err}");
                std::process::exit(0);
            }
            _ => {
                eprintln!("{err}");
                std::process::exit(1);
            }
        },
    };
    if let Err(err) = run(&parsed) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}

fn run(args: &Cli) -> Result<(), CliError> {
    let output = match &args.command {
        Command::Fit(a) => commands::fit(a)?,
        Command::Decompose(a) => commands::decompose_cmd(a)?,
        Command::Xpoint(a) => commands::xpoint_cmd(a)?,
        Command::Argmax(a) => commands::argmax(a)?,
        Command::Compare(a) => commands::compare_cmd(a, args.tolerance)?,
        Command::Plan(a) => commands::plan(a)?,
        Command::Simulate(a) => commands::simulate(a)?,
        Command::Reproduce => commands::reproduce(args.tolerance)?,
        Command::Plot(a) => commands::plot(a)?,
    };
    let text = match output {
        Output::Doc(doc) => doc.render(args.format.into(), args.pretty),
        Output::Raw(raw) => raw,
    };
    match &args.output {
        Some(path) => std::fs::write(path, text).map_err(|err| CliError {
            code: 2,
            message: format!("cannot write {}: {err}", path.display()),
        })?,
        None => print!("{text}"),
    }
    Ok(())
}
