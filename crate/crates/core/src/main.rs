fn main() {
    let code = supercong::cli::run(std::env::args_os());
    std::process::exit(code);
}
