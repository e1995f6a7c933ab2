fn main() {
    std::process::exit(mcq_core::runner::cli::cli_main(std::env::args_os()));
}
