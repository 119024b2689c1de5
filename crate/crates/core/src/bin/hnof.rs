use std::process::ExitCode;

use clap::Parser;
use hellinger_nof::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &outcome.output)
                    .map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(outcome.exit_code as u8),
                Err(msg) => {
                    eprintln!("hnof: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("hnof: {e}");
            ExitCode::from(2)
        }
    }
}
