fn main() {
    std::process::exit(oddmaps::cli::run(std::env::args_os()));
}
