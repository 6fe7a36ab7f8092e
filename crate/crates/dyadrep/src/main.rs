fn main() {
    std::process::exit(dyadrep::cli::run());
}
