use std::io::Write as _;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = backdoors_cli::run(std::env::args().collect());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code)
}
