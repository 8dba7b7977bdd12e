fn main() {
    std::process::exit(qflat::cli::main_with_args(std::env::args_os()));
}
