fn main() {
    std::process::exit(bicyclic::cli::main_with_args(std::env::args_os()));
}
