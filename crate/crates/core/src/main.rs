use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(right_ratio::cli::main())
}
