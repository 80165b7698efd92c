fn main() -> std::process::ExitCode {
    beatty_cli::main_with_args(std::env::args_os())
}
