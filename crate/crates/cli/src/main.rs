fn main() {
    std::process::exit(concave_ot_cli::run(std::env::args_os()));
}
