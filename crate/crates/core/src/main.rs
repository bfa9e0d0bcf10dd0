fn main() {
    std::process::exit(kendall_perfect::cli::run());
}
