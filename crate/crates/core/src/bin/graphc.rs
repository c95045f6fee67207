fn main() -> std::process::ExitCode {
    graphc::cli::main_entry()
}
