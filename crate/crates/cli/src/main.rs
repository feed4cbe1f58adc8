use std::process::ExitCode;

use adsorb_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    // clap exits with 2 on bad flags and 0 for --help / --version
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("adsorb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
