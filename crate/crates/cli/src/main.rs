fn main() {
    std::process::exit(chirality_cli::run(std::env::args_os()));
}
