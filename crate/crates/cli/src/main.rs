//! `randpart`: command-line access to the randpart library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use commands::Command;
use output::Meta;

#[derive(Parser, Debug, Serialize)]
#[command(name = "randpart", version, about = "Random partitions: measures, kernels, limit shapes, GW/Hurwitz sums")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Require exact rational output.
    #[arg(long, global = true)]
    exact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let table = match commands::run(&cli.command, cli.seed, cli.exact) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                randpart::Error::Numeric(_) | randpart::Error::Invariant(_) => 3,
                _ => 2,
            };
            return ExitCode::from(code);
        }
    };
    let meta = Meta {
        subcommand: cli.command.name().to_string(),
        parameters: serde_json::to_value(&cli).unwrap_or(serde_json::Value::Null),
        seed: cli.seed,
    };
    let bytes = match cli.format {
        Format::Csv => output::render_csv(&meta, &table),
        Format::Json => output::render_json(&meta, &table),
    };
    let written = bytes.map_err(|e| e.to_string()).and_then(|b| output::write(&b, cli.out.as_deref()).map_err(|e| e.to_string()));
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
