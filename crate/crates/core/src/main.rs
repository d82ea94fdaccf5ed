fn main() {
    std::process::exit(subord::cli::run(std::env::args_os()));
}
