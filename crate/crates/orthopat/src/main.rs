fn main() { std::process::exit(orthopat::cli::run()); }
