fn main() { std::process::exit(hilbert_cones::cli::main()) }
