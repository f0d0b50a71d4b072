fn main() {
    std::process::exit(casimir::cli::main_with_args(std::env::args_os()));
}
