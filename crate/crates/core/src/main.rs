fn main() {
    std::process::exit(eigenbound::cli::main_entry());
}
