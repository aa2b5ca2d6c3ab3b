fn main() {
    std::process::exit(krull::cli::run(std::env::args_os()));
}
