fn main() -> std::process::ExitCode {
    mjpl::cli::run(std::env::args_os())
}
