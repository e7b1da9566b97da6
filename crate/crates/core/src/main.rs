fn main() -> std::process::ExitCode {
    magic_spectra::cli::main()
}
