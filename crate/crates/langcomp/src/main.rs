fn main() {
    std::process::exit(langcomp::cli::run(std::env::args_os()));
}
