fn main() {
    std::process::exit(distbc::experiment::cli::main_with_args(std::env::args_os()));
}
