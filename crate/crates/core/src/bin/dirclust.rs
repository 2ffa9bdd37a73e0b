fn main() {
    std::process::exit(dirclust::cli::main());
}
