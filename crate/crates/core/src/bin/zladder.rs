fn main() {
    std::process::exit(zladder::cli::run(std::env::args_os()));
}
