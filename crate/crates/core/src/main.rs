fn main() {
    std::process::exit(catalyst_lowering::cli::main_with_args(std::env::args_os()));
}
