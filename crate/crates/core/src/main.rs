fn main() {
    std::process::exit(delta_cat::cli::main());
}
