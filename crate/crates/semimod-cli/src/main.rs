fn main() {
    std::process::exit(semimod_cli::cli::run(std::env::args_os()));
}
