use std::process::ExitCode;

fn main() -> ExitCode {
    hlpe::cli::run()
}
