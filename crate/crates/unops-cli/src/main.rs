use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = unops_cli::Cli::parse();
    match unops_cli::execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
