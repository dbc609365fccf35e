fn main() {
    std::process::exit(frobcx::cli::run(std::env::args_os()));
}
