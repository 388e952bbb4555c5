fn main() {
    std::process::exit(lctcert::cli::run());
}
