fn main() -> std::process::ExitCode {
    skelsig::cli::main()
}
