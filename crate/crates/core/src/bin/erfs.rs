fn main() {
    std::process::exit(erfs::cli::run_cli(std::env::args_os()));
}
