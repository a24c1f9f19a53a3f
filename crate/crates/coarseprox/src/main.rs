fn main() {
    std::process::exit(coarseprox::cli::run(std::env::args_os()));
}
