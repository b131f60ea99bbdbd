mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use report::EXIT_UNDECIDED;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = commands::run(&cli.command, &cli.common).and_then(|rep| {
        let config = serde_json::to_value(&cli).expect("config serializes");
        rep.write(cli.common.out.as_deref(), config, start.elapsed().as_secs_f64())?;
        Ok(rep.undecided)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("some tuples could not be certified; see the undecided column");
            ExitCode::from(EXIT_UNDECIDED)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
