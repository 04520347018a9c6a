fn main() {
    std::process::exit(anomex::cli::main_with_args(std::env::args_os()));
}
