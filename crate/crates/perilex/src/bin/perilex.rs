use std::process::ExitCode;

fn main() -> ExitCode {
    perilex::cli::main()
}
