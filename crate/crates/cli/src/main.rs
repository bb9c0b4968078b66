fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(givental_cli::run_command(std::env::args_os()) as u8)
}
