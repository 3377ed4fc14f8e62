use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(malcev_forge::cli::main_from_args(std::env::args_os()))
}
