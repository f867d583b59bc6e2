fn main() {
    std::process::exit(qpartition::cli::main_entry());
}
