fn main() {
    std::process::exit(diagram_homology::cli::run(std::env::args_os()));
}
