fn main() {
    std::process::exit(etrees::cli::run(std::env::args_os()));
}
