use std::process::ExitCode;

fn main() -> ExitCode {
    painleve_dynamics::cli::main_with_args(std::env::args_os())
}
