use std::process::ExitCode;

fn main() -> ExitCode {
    skewmorph_cli::main_entry()
}
