fn main() {
    std::process::exit(slice_twistor::cli::run(std::env::args_os()));
}
