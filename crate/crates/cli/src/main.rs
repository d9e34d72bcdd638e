use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use mirror_drag_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::VerificationFailed => eprintln!("error: verification failed"),
                CliError::Usage(msg) | CliError::Numerical(msg) => eprintln!("error: {msg}"),
            }
            e.exit_code()
        }
    }
}
