fn main() {
    std::process::exit(rydberg_jc_cli::main_with_args(std::env::args_os()));
}
