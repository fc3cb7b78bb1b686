fn main() {
    std::process::exit(covkit::cli::main());
}
