fn main() {
    std::process::exit(coh1::cli::run());
}
