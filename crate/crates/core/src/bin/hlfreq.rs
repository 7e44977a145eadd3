fn main() {
    std::process::exit(hlfreq::cli::run(std::env::args_os()));
}
