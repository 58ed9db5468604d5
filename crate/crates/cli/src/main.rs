fn main() {
    std::process::exit(skewcorr_cli::run());
}
