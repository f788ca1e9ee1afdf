fn main() {
    std::process::exit(motionsimp_cli::main_with_args(std::env::args_os()));
}
