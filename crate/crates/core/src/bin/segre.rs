use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = segre_core::cli::run_from_args(std::env::args_os());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
