use std::process::ExitCode;

use clap::Parser;
use kohn_spectra_cli::config::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match kohn_spectra_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kohn-spectra: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
