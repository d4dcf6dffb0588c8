use std::panic;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = panic::catch_unwind(|| morphseg::cli::run(std::env::args_os())).unwrap_or(3);
    ExitCode::from(code as u8)
}
