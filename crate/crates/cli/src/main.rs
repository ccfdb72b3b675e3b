use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use silting_lab::commands::{run, Cli, Command};
use silting_lab::scenarios::NAMES;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        None => {
            Cli::command().print_help().ok();
            return ExitCode::SUCCESS;
        }
        Some(Command::Scenario { names }) if names.is_empty() => {
            println!("usage: silting-lab scenario <NAME>... | all\n\nscenarios:");
            for (name, about) in NAMES {
                println!("  {name:<20} {about}");
            }
            return ExitCode::SUCCESS;
        }
        _ => {}
    }
    let cfg = cli.config();
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.render(&cfg));
            if report.unstable() {
                eprintln!("warning: some dimensions changed between L = {} and L = {}", cfg.trunc, cfg.trunc + cfg.delta);
            }
            ExitCode::from(report.exit_code(&cfg) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
