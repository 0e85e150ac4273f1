mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "frobsig", version, about = "Frobenius splitting invariants and their transformation under finite covers")]
pub struct Cli {
    /// fedder | ae | fsig | sp | ratio | tau | sigma | cover-trace | cover-norm |
    /// cover-minpoly | cover-ram | transpose | verify-fsig | verify-sp |
    /// verify-tau | verify-sigma | verify-sandwich | paper-suite | run
    pub command: String,
    /// JSON configuration (not needed for paper-suite)
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub e_max: u32,
    #[arg(long, default_value_t = 2)]
    pub e_window: u32,
    /// Degree bound for element scans (transpose without --element)
    #[arg(long)]
    pub degree_bound: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Scale the configured divisor by this rational
    #[arg(long)]
    pub t: Option<String>,
    /// Element for cover-* and transpose commands, repeatable
    #[arg(long)]
    pub element: Vec<String>,
    /// Frobenius exponent for transpose
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Also compare signatures in verify-sandwich
    #[arg(long)]
    pub signature: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::main_with(&cli) as u8)
}
