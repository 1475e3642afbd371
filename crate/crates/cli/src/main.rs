use std::process::ExitCode;

use clap::Parser;
use majorize_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let message = err.to_string();
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(err.exit_code())
        }
    }
}
