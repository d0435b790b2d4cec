fn main() {
    std::process::exit(gpe_morse::cli::run(std::env::args_os()));
}
