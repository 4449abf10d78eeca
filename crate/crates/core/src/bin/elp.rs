fn main() -> std::process::ExitCode {
    elp_core::cli::main()
}
