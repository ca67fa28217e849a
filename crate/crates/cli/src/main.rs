mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::Cli;
use error::{CliError, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let msg = e.render().to_string();
            let msg = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let r = json!({"command": null, "error": "usage", "message": msg, "exit": EXIT_USAGE});
            println!("{r}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let (format, timings) = (cli.format, cli.timings);
    let command = command_name(&cli.command);
    let (records, code) = match commands::run(cli.command) {
        Ok(out) => (out.records, out.code),
        Err(e) => {
            eprintln!("phs: {e}");
            (vec![error_record(command, &e)], e.code())
        }
    };
    let mut stdout = std::io::stdout().lock();
    for mut r in records {
        if !timings {
            output::strip_timings(&mut r);
        }
        let _ = stdout.write_all(output::render(&r, format).as_bytes());
    }
    ExitCode::from(code as u8)
}

fn error_record(command: &str, e: &CliError) -> serde_json::Value {
    json!({"command": command, "error": e.kind(), "message": e.to_string(), "exit": e.code()})
}

fn command_name(c: &args::Command) -> &'static str {
    use args::Command::*;
    match c {
        Parse(_) => "parse",
        Rewrite { .. } => "rewrite",
        Eval { .. } => "eval",
        Compile { .. } => "compile",
        Sat { .. } => "sat",
        Mc { .. } => "mc",
        Gen { .. } => "gen",
    }
}
