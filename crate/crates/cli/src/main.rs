use std::process::ExitCode;

use clap::Parser;
use primelab::cli::Cli;
use primelab::{run, TaskConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (task, args) = cli.command.split();
    let outcome = TaskConfig::from_args(task, args).and_then(|cfg| run(&cfg));
    match outcome {
        Ok(summary) => {
            eprintln!("{}", summary.render());
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("primelab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
