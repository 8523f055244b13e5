use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = multitile_cli::run(std::env::args_os());
    if outcome.code == multitile_cli::EXIT_OK || outcome.code == multitile_cli::EXIT_NEGATIVE {
        println!("{}", outcome.report.trim_end());
    } else {
        eprintln!("{}", outcome.report.trim_end());
    }
    ExitCode::from(outcome.code as u8)
}
