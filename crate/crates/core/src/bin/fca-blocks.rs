use std::process::ExitCode;

fn main() -> ExitCode {
    fca_blocks::cli::main_from_env()
}
