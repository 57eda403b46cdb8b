fn main() {
    std::process::exit(wedderburn_artin::cli::run(std::env::args_os()));
}
