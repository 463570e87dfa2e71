use std::process::ExitCode;

fn main() -> ExitCode {
    gdewalk::cli::main_entry()
}
