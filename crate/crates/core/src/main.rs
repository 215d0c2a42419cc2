fn main() {
    std::process::exit(supercohomology::cli::run(std::env::args_os()));
}
