fn main() {
    std::process::exit(skewcode::cli::main_with_args(std::env::args_os()));
}
