fn main() {
    std::process::exit(twinspin::cli::main());
}
