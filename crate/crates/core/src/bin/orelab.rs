fn main() {
    std::process::exit(orelab::cli::main_from_env());
}
