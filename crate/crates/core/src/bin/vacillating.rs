fn main() -> std::process::ExitCode {
    vacillating::cli::main()
}
