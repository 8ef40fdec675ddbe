fn main() {
    std::process::exit(hppk::cli::run(std::env::args_os()));
}
