fn main() {
    std::process::exit(soergel_cli::main_with_args(std::env::args_os()));
}
