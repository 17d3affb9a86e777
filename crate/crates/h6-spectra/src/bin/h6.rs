fn main() {
    std::process::exit(h6_spectra::cli::run());
}
