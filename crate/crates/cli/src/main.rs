use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = latkit_cli::run(std::env::args_os(), &mut std::io::stdin());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(outcome.code as u8)
}
