/// `println!` that ignores a closed stdout.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

mod cli;
mod commands;
mod config;
mod output;
mod validate;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use config::Config;

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Usage(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Validation(m) => write!(f, "validation failed: {m}"),
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Io(m) => write!(f, "i/o: {m}"),
        }
    }
}

impl From<capwave::Error> for Failure {
    fn from(e: capwave::Error) -> Self {
        use capwave::Error::*;
        match e {
            InvalidParams(_) | UseDimensionalPipeline(_) | NonNegativeFrequency(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

/// Worker count: `BABENKO_THREADS` if set, else the available parallelism.
pub fn threads() -> usize {
    std::env::var("BABENKO_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let out = cli.out.as_path();
    match cli.command {
        Command::Dispersion { params, k_min, k_max, samples } => {
            commands::dispersion(out, &cfg, params, k_min, k_max, samples)
        }
        Command::Critical { params } => commands::critical(out, &cfg, params),
        Command::Radicals { g_recip, v } => commands::radicals(out, &cfg, g_recip, v),
        Command::Vstar { width } => commands::vstar_cmd(out, &cfg, width),
        Command::Solve { params, wave, eps } => commands::solve_cmd(out, &cfg, params, wave, eps),
        Command::Converge { params, wave, eps_ladder, delta } => {
            commands::converge(out, &cfg, params, wave, eps_ladder, delta)
        }
        Command::Validate => validate::run(out),
        Command::Sweep { v_min, v_max, samples } => {
            commands::sweep_cmd(out, &cfg, v_min, v_max, samples)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("capwave: {f}");
            ExitCode::from(f.code())
        }
    }
}
