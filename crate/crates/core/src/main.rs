fn main() {
    std::process::exit(screwline::cli::run(std::env::args_os()));
}
