fn main() {
    std::process::exit(awcalc::cli::run(std::env::args_os()));
}
