fn main() {
    std::process::exit(qudit_prep::cli::run(std::env::args_os()));
}
