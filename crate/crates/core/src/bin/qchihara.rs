fn main() {
    std::process::exit(qchihara::cli::main_with_stdio());
}
