mod commands;
mod config;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use crate::commands::{dispatch, EXIT_USAGE};
use crate::config::{Cli, Format, RunConfig};

/// Keys come out sorted, so parsing and re-serializing a report is
/// byte-identical.
fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn run(config: RunConfig) -> i32 {
    let command = config.command.name();
    let (code, out) = match dispatch(&config) {
        Ok(outcome) => {
            let out = match config.format {
                Format::Json => render(&json!({
                    "command": command,
                    "exit_code": outcome.code,
                    "report": outcome.report,
                    "seed": config.seed,
                })),
                Format::Text => format!("{command} (seed {})\n{}", config.seed, outcome.text),
            };
            (outcome.code, out)
        }
        Err(e) => {
            eprintln!("lpmaj {command}: error: {e}");
            let out = match config.format {
                Format::Json => render(&json!({
                    "command": command,
                    "error": e.to_json(),
                    "exit_code": EXIT_USAGE,
                    "seed": config.seed,
                })),
                Format::Text => String::new(),
            };
            (EXIT_USAGE, out)
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli.into()) as u8)
}
