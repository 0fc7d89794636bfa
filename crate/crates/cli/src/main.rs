fn main() {
    std::process::exit(quatfield_cli::run(std::env::args().collect()));
}
