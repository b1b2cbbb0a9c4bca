use std::process::ExitCode;

use scdcn::cli::{dispatch, parse_args, CliError};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args_os()) {
        Ok(config) => dispatch(&config),
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprint!("{}", e.message());
            if !e.message().ends_with('\n') {
                eprintln!();
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
