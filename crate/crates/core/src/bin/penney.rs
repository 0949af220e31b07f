fn main() {
    std::process::exit(penney_cns::cli::run(std::env::args_os()));
}
