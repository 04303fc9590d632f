mod cache;
mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

use config::{Command, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let result = match &config.command {
        Command::VerifyType { types } => commands::verify_type(&config, types),
        Command::Lefschetz { degrees } => {
            let degrees: Vec<Vec<u32>> = degrees.iter().map(|d| d.0.clone()).collect();
            commands::lefschetz(&config, &degrees)
        }
        Command::NlClassical { degree } => commands::nl_classical(&config, degree),
        Command::Batch { max_t, recheck } => commands::batch(&config, *max_t, *recheck),
        Command::Dim { ring, ty, bidegree } => commands::dim(*ring, ty.as_ref(), *bidegree),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::EXIT_USAGE)
        }
    }
}
