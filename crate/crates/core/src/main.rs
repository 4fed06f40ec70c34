use std::process::ExitCode;

fn main() -> ExitCode {
    beurling::cli::main()
}
