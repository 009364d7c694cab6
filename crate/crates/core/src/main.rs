fn main() {
    std::process::exit(edgesched::cli::run_cli(std::env::args_os()));
}
