fn main() {
    std::process::exit(minhom_cli::run(std::env::args_os()));
}
