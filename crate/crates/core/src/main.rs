fn main() {
    std::process::exit(mactt::cli::run(std::env::args_os()));
}
