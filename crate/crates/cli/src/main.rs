fn main() {
    std::process::exit(homix_cli::run());
}
