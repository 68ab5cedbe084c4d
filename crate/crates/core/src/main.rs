fn main() {
    std::process::exit(georenyi::cli::run(std::env::args_os()));
}
