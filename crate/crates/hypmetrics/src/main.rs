fn main() {
    let code = hypmetrics::cli::run(std::env::args_os());
    std::process::exit(code);
}
