fn main() {
    std::process::exit(prymconic::cli::run(std::env::args_os()));
}
