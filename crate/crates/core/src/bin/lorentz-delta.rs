fn main() {
    std::process::exit(lorentz_delta::cli::run(std::env::args_os()));
}
