fn main() {
    std::process::exit(lattice_rules::cli::run(std::env::args_os()));
}
