use std::process::ExitCode;

fn main() -> ExitCode {
    let code = yangian_cli::run(std::env::args_os());
    ExitCode::from(code)
}
