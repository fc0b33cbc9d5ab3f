fn main() {
    std::process::exit(jc_revival::cli::run(std::env::args_os()));
}
