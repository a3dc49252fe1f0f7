fn main() {
    std::process::exit(fncodes::cli::main_with(std::env::args_os()));
}
