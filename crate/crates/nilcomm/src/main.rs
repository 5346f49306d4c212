use std::process::ExitCode;

fn main() -> ExitCode {
    nilcomm::cli::main_entry()
}
