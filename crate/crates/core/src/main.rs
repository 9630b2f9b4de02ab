fn main() {
    std::process::exit(smoothwords::cli::run(std::env::args_os()));
}
