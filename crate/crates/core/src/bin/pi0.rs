use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match realpi0::cli::execute(std::env::args_os()) {
        Ok(out) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        // --help and --version come back here with code 0
        Err((0, msg)) => {
            print!("{msg}");
            ExitCode::SUCCESS
        }
        Err((code, msg)) => {
            eprint!("{msg}");
            ExitCode::from(code as u8)
        }
    }
}
