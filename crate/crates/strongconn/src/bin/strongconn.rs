use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use strongconn::cli::{run, Cli, USAGE_EXIT_CODE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(USAGE_EXIT_CODE)
        }
    }
}
