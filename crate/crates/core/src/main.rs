fn main() {
    std::process::exit(ekrlab::cli::run(std::env::args_os()));
}
