fn main() {
    std::process::exit(pdcs::cli::run(std::env::args_os()));
}
