fn main() {
    std::process::exit(ffzeta::cli::main_with_args(std::env::args_os()));
}
