fn main() { std::process::exit(hp2::cli::main_entry()) }
