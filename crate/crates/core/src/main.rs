fn main() {
    std::process::exit(ramsey_nice::cli::run(std::env::args_os()));
}
